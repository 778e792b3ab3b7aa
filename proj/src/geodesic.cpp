#include "spineneck/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spineneck {

namespace {

constexpr int kProbeDirections = 32;
constexpr double kPi = 3.14159265358979323846;

double axis_derivative(double left, double center, double right) {
  const bool l = std::isfinite(left);
  const bool r = std::isfinite(right);
  if (l && r) return 0.5 * (right - left);
  if (r) return right - center;
  if (l) return center - left;
  return 0.0;
}

GridPoint clamp_to(const ScalarField& f, GridPoint p) {
  return {std::clamp(p.x, 0.0, double(f.width() - 1)),
          std::clamp(p.y, 0.0, double(f.height() - 1))};
}

}  // namespace

ArrivalGradient::ArrivalGradient(const ArrivalTimeField& arrival)
    : arrival_(&arrival),
      gx_(arrival.field.width(), arrival.field.height()),
      gy_(arrival.field.width(), arrival.field.height()) {
  const ScalarField& u = arrival.field;
  const double inf = std::numeric_limits<double>::infinity();
  auto at = [&](int x, int y) { return u.contains(x, y) ? u(x, y) : inf; };
  for (int y = 0; y < u.height(); ++y) {
    for (int x = 0; x < u.width(); ++x) {
      const double c = u(x, y);
      if (!std::isfinite(c)) continue;
      gx_(x, y) = axis_derivative(at(x - 1, y), c, at(x + 1, y));
      gy_(x, y) = axis_derivative(at(x, y - 1), c, at(x, y + 1));
    }
  }
}

GridPoint ArrivalGradient::at(GridPoint p) const {
  return {sample_bilinear(gx_, p), sample_bilinear(gy_, p)};
}

GeodesicPath backtrack(const ArrivalTimeField& arrival, GridPoint terminal,
                       const BacktrackParams& params) {
  return backtrack(ArrivalGradient(arrival), terminal, params);
}

GeodesicPath backtrack(const ArrivalGradient& gradient, GridPoint terminal,
                       const BacktrackParams& params) {
  const ArrivalTimeField& arrival = gradient.arrival();
  const ScalarField& u = arrival.field;
  if (!u.contains(terminal)) {
    throw Error(ErrorCode::SourceOutOfBounds, "terminal outside the grid");
  }
  if (!(params.step > 0.0 && params.step <= 1.0)) {
    throw Error(ErrorCode::BadParameter, "step must lie in (0, 1]");
  }
  if (!(params.tol >= params.step)) {
    throw Error(ErrorCode::BadParameter, "tol must be at least the step length");
  }
  const int max_steps =
      params.max_steps > 0
          ? params.max_steps
          : static_cast<int>(std::ceil(20.0 * std::hypot(u.width(), u.height())));

  GeodesicPath path;
  path.terminal_arrival = sample_bilinear(u, terminal);
  if (!std::isfinite(path.terminal_arrival)) {
    throw Error(ErrorCode::NoConvergence, "terminal was never reached by the front");
  }
  const GridPoint source = arrival.source;
  std::vector<GridPoint> pts{terminal};
  GridPoint x = terminal;
  double ux = path.terminal_arrival;
  const double min_step = params.step / 64.0;

  int steps = 0;
  while (distance(x, source) > params.tol) {
    if (++steps > max_steps) {
      throw Error(ErrorCode::NoConvergence,
                  "descent did not reach the source in " + std::to_string(max_steps) + " steps");
    }
    const GridPoint g = gradient.at(x);
    const double gn = g.norm();
    if (gn < 1e-12) {
      throw Error(ErrorCode::ZeroGradient, "vanishing arrival gradient away from the source");
    }
    const GridPoint dir = (1.0 / gn) * g;
    double s = params.step;
    GridPoint next = clamp_to(u, x - s * dir);
    double un = sample_bilinear(u, next);
    const double slack = 1e-12 * (1.0 + std::abs(ux));
    while (!(un <= ux + slack) && s > min_step) {
      s *= 0.5;
      next = clamp_to(u, x - s * dir);
      un = sample_bilinear(u, next);
    }
    if (!(un <= ux + slack)) {
      // The central-difference direction can point uphill on the bilinear
      // surface next to kinks; fall back to the lowest of the probed moves.
      s = params.step;
      un = std::numeric_limits<double>::infinity();
      for (int k = 0; k < kProbeDirections; ++k) {
        const double a = 2.0 * kPi * k / kProbeDirections;
        const GridPoint probe = clamp_to(u, x + s * GridPoint{std::cos(a), std::sin(a)});
        const double up = sample_bilinear(u, probe);
        if (up < un) {
          un = up;
          next = probe;
        }
      }
      if (!(un < ux)) {
        throw Error(ErrorCode::NoConvergence, "descent stalled at a spurious critical point");
      }
    }
    x = next;
    ux = un;
    pts.push_back(x);
  }
  pts.push_back(source);
  std::reverse(pts.begin(), pts.end());
  path.points = std::move(pts);
  return path;
}

std::vector<GeodesicPath> trace_candidates(const ArrivalTimeField& arrival,
                                           const std::vector<GridPoint>& terminals,
                                           const BacktrackParams& params, Warnings* warnings,
                                           std::vector<std::size_t>* kept) {
  if (terminals.empty()) throw Error(ErrorCode::EmptySet, "no terminals to trace");
  const ArrivalGradient gradient(arrival);
  std::vector<GeodesicPath> paths;
  if (kept != nullptr) kept->clear();
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    try {
      paths.push_back(backtrack(gradient, terminals[i], params));
      if (kept != nullptr) kept->push_back(i);
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::Numerical) throw;
      warn(warnings, "dropped candidate " + std::to_string(i) + ": " + e.what());
    }
  }
  if (paths.empty()) {
    throw Error(ErrorCode::AllTracesFailed,
                "all " + std::to_string(terminals.size()) + " candidate traces failed");
  }
  return paths;
}

}  // namespace spineneck
