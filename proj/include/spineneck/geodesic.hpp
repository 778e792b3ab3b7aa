#pragma once

#include <vector>

#include "spineneck/eikonal.hpp"

namespace spineneck {

// Minimal path ordered from the source (index 0) to the terminal (last).
struct GeodesicPath {
  std::vector<GridPoint> points;
  double terminal_arrival = 0.0;
};

struct BacktrackParams {
  double step = 0.5;
  double tol = 1.0;
  int max_steps = 0;  // 0 selects 20 x grid diagonal
};

// Central-difference gradient of an arrival field, one-sided at grid edges
// and next to unreached (+Inf) pixels; zero where U itself is unreached.
class ArrivalGradient {
 public:
  explicit ArrivalGradient(const ArrivalTimeField& arrival);

  GridPoint at(GridPoint p) const;  // bilinear interpolation
  const ArrivalTimeField& arrival() const { return *arrival_; }

 private:
  const ArrivalTimeField* arrival_;
  ScalarField gx_;
  ScalarField gy_;
};

// Fixed-length normalized gradient descent from `terminal` until within
// `tol` of the source, then appends the exact source. A step that would
// raise the interpolated arrival time is halved (down to step/64); if that
// still fails, the lowest of 32 equally spaced moves of full length is
// taken. The sampled arrival is therefore nonincreasing along the descent,
// except for the final snap to the source.
GeodesicPath backtrack(const ArrivalTimeField& arrival, GridPoint terminal,
                       const BacktrackParams& params = {});
GeodesicPath backtrack(const ArrivalGradient& gradient, GridPoint terminal,
                       const BacktrackParams& params = {});

// One backtrack per terminal. Failed traces are dropped with a warning;
// `kept` receives the input index of each returned path.
std::vector<GeodesicPath> trace_candidates(const ArrivalTimeField& arrival,
                                           const std::vector<GridPoint>& terminals,
                                           const BacktrackParams& params = {},
                                           Warnings* warnings = nullptr,
                                           std::vector<std::size_t>* kept = nullptr);

}  // namespace spineneck
