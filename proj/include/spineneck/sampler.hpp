#pragma once

#include <cstdint>
#include <vector>

#include "spineneck/eikonal.hpp"

namespace spineneck {

// Shaft boundary points with their arrival times and sampling weights
// w_s = 1 - (t_s - t_min) / (t_max - t_min).
struct WeightedBoundary {
  std::vector<GridPoint> points;
  std::vector<double> arrivals;
  std::vector<double> weights;
  double t_minus = 0.0;
  double t_plus = 0.0;
};

// Arrival times are read by bilinear interpolation. Points the front never
// reached get weight 0 and do not enter t_minus / t_plus. When every reached
// point shares one arrival time all of them get weight 1.
WeightedBoundary weigh_boundary(const std::vector<GridPoint>& boundary,
                                const ArrivalTimeField& arrival, Warnings* warnings = nullptr);

// Repeatedly draws a uniformly random point among those not yet accepted
// and accepts it with probability equal to its weight, until `n` points are
// accepted or no point with positive weight remains (short count warns).
// Returns indices into wb.points in acceptance order.
std::vector<std::size_t> sample_terminal_indices(const WeightedBoundary& wb, int n,
                                                 std::uint64_t seed,
                                                 Warnings* warnings = nullptr);

std::vector<GridPoint> sample_terminals(const WeightedBoundary& wb, int n, std::uint64_t seed,
                                        Warnings* warnings = nullptr);

// Boundary point with minimal arrival time; ties go to the lowest index.
std::size_t nearest_terminal_index(const WeightedBoundary& wb);
GridPoint nearest_terminal(const WeightedBoundary& wb);

}  // namespace spineneck
