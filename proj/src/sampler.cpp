#include "spineneck/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spineneck/random.hpp"

namespace spineneck {

WeightedBoundary weigh_boundary(const std::vector<GridPoint>& boundary,
                                const ArrivalTimeField& arrival, Warnings* warnings) {
  if (boundary.empty()) throw Error(ErrorCode::EmptyBoundary, "boundary set is empty");
  WeightedBoundary wb;
  wb.points = boundary;
  wb.arrivals.reserve(boundary.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t unreached = 0;
  for (const GridPoint& p : boundary) {
    if (!arrival.field.contains(p)) {
      throw Error(ErrorCode::SourceOutOfBounds, "boundary point outside the grid");
    }
    const double t = sample_bilinear(arrival.field, p);
    wb.arrivals.push_back(t);
    if (!std::isfinite(t)) {
      ++unreached;
      continue;
    }
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  if (unreached == boundary.size()) {
    throw Error(ErrorCode::EmptyBoundary, "no boundary point was reached by the front");
  }
  if (unreached > 0) {
    warn(warnings, std::to_string(unreached) + " boundary points unreached; weight set to 0");
  }
  wb.t_minus = lo;
  wb.t_plus = hi;
  wb.weights.reserve(boundary.size());
  for (double t : wb.arrivals) {
    if (!std::isfinite(t)) {
      wb.weights.push_back(0.0);
    } else if (hi == lo) {
      wb.weights.push_back(1.0);
    } else {
      wb.weights.push_back(std::clamp(1.0 - (t - lo) / (hi - lo), 0.0, 1.0));
    }
  }
  return wb;
}

std::vector<std::size_t> sample_terminal_indices(const WeightedBoundary& wb, int n,
                                                 std::uint64_t seed, Warnings* warnings) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "terminal count must be at least 1");
  if (wb.points.empty()) throw Error(ErrorCode::EmptyBoundary, "boundary set is empty");
  Rng rng(seed);
  std::vector<std::size_t> pool(wb.points.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;

  auto pool_mass = [&] {
    double m = 0.0;
    for (std::size_t i : pool) m += wb.weights[i];
    return m;
  };

  std::vector<std::size_t> accepted;
  double mass = pool_mass();
  std::size_t rejections = 0;
  while (static_cast<int>(accepted.size()) < n && mass > 0.0) {
    std::size_t slot;
    if (rejections >= 64 * pool.size()) {
      // Tiny remaining weights: the rejection loop would accept a point with
      // probability proportional to its weight, so draw that directly.
      double r = rng.uniform() * mass;
      slot = pool.size() - 1;
      for (std::size_t j = 0; j < pool.size(); ++j) {
        r -= wb.weights[pool[j]];
        if (r < 0.0 && wb.weights[pool[j]] > 0.0) {
          slot = j;
          break;
        }
      }
      while (wb.weights[pool[slot]] <= 0.0) --slot;
    } else {
      slot = static_cast<std::size_t>(rng.below(pool.size()));
      if (!(rng.uniform() < wb.weights[pool[slot]])) {
        ++rejections;
        continue;
      }
    }
    accepted.push_back(pool[slot]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(slot));
    mass = pool_mass();
    rejections = 0;
  }
  if (static_cast<int>(accepted.size()) < n) {
    warn(warnings, "only " + std::to_string(accepted.size()) + " of " + std::to_string(n) +
                       " terminals could be accepted");
  }
  return accepted;
}

std::vector<GridPoint> sample_terminals(const WeightedBoundary& wb, int n, std::uint64_t seed,
                                        Warnings* warnings) {
  std::vector<GridPoint> out;
  for (std::size_t i : sample_terminal_indices(wb, n, seed, warnings)) out.push_back(wb.points[i]);
  return out;
}

std::size_t nearest_terminal_index(const WeightedBoundary& wb) {
  if (wb.points.empty()) throw Error(ErrorCode::EmptyBoundary, "boundary set is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < wb.arrivals.size(); ++i) {
    if (wb.arrivals[i] < wb.arrivals[best]) best = i;
  }
  return best;
}

GridPoint nearest_terminal(const WeightedBoundary& wb) {
  return wb.points[nearest_terminal_index(wb)];
}

}  // namespace spineneck
