#include "spineneck/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>

namespace spineneck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class State : unsigned char { Far, Trial, Known };

}  // namespace

PotentialField build_potential(const ScalarField& g, double mu, double w) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::BadParameter, "mu must be positive, got " + std::to_string(mu));
  }
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw Error(ErrorCode::BadParameter, "w must be positive, got " + std::to_string(w));
  }
  ScalarField p = g;
  for (double& v : p.values()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::BadParameter, "image must be normalized to [0,1]");
    }
    v = w + std::exp(-mu * v);
  }
  return {std::move(p), w, mu};
}

ArrivalTimeField fast_march(const PotentialField& potential, GridPoint source,
                            const BinaryMask* absorbing) {
  return fast_march(potential.field, source, absorbing);
}

ArrivalTimeField fast_march(const ScalarField& speed, GridPoint source,
                            const BinaryMask* absorbing) {
  const int w = speed.width();
  const int h = speed.height();
  if (!speed.contains(source)) {
    throw Error(ErrorCode::SourceOutOfBounds, "source outside the grid");
  }
  for (double v : speed.values()) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::BadParameter, "inverse speed must be finite and positive");
    }
  }
  if (absorbing != nullptr && (absorbing->width() != w || absorbing->height() != h)) {
    throw Error(ErrorCode::DimensionMismatch, "absorbing mask does not match potential");
  }
  const int sx = static_cast<int>(std::lround(source.x));
  const int sy = static_cast<int>(std::lround(source.y));
  if (absorbing != nullptr && (*absorbing)(sx, sy)) {
    throw Error(ErrorCode::BadParameter, "source lies inside the absorbing region");
  }

  auto sink = [&](int x, int y) { return absorbing != nullptr && (*absorbing)(x, y); };

  ArrivalTimeField out{ScalarField(w, h, kInf), source, {double(sx), double(sy)}, {}};
  ScalarField& u = out.field;
  out.accepted.reserve(speed.size());
  std::vector<State> state(speed.size(), State::Far);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

  // Known, propagating neighbor value or +Inf.
  auto known = [&](int x, int y) {
    if (!u.contains(x, y)) return kInf;
    const std::size_t i = u.index(x, y);
    if (state[i] != State::Known || sink(x, y)) return kInf;
    return u(x, y);
  };

  auto solve_local = [&](int x, int y) {
    double a = std::min(known(x - 1, y), known(x + 1, y));
    double b = std::min(known(x, y - 1), known(x, y + 1));
    if (a > b) std::swap(a, b);
    const double f = speed(x, y);
    if (!std::isfinite(b) || b - a >= f) return a + f;
    const double disc = 2.0 * f * f - (a - b) * (a - b);
    if (disc < 0.0) return a + f;
    return 0.5 * (a + b + std::sqrt(disc));
  };

  u(sx, sy) = 0.0;
  state[u.index(sx, sy)] = State::Trial;
  heap.emplace(0.0, u.index(sx, sy));

  constexpr int kDx[4] = {-1, 1, 0, 0};
  constexpr int kDy[4] = {0, 0, -1, 1};
  while (!heap.empty()) {
    const auto [value, idx] = heap.top();
    heap.pop();
    if (state[idx] == State::Known || value > u.values()[idx]) continue;
    state[idx] = State::Known;
    out.accepted.push_back(idx);
    const int x = static_cast<int>(idx % static_cast<std::size_t>(w));
    const int y = static_cast<int>(idx / static_cast<std::size_t>(w));
    if (sink(x, y)) continue;
    for (int k = 0; k < 4; ++k) {
      const int nx = x + kDx[k];
      const int ny = y + kDy[k];
      if (!u.contains(nx, ny)) continue;
      const std::size_t ni = u.index(nx, ny);
      if (state[ni] == State::Known) continue;
      const double candidate = solve_local(nx, ny);
      if (candidate < u(nx, ny)) {
        u(nx, ny) = candidate;
        state[ni] = State::Trial;
        heap.emplace(candidate, ni);
      }
    }
  }
  return out;
}

}  // namespace spineneck
