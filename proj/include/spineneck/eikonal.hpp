#pragma once

#include <cstddef>
#include <vector>

#include "spineneck/raster.hpp"

namespace spineneck {

// Inverse propagation speed w + exp(-mu * g), sampled at pixel centers.
struct PotentialField {
  ScalarField field;
  double w = 0.01;
  double mu = 7.0;
};

struct ArrivalTimeField {
  ScalarField field;          // arrival time; +Inf where the front never arrived
  GridPoint source;           // real-valued source as requested
  GridPoint seed_pixel;       // pixel the front was started from (rounded source)
  std::vector<std::size_t> accepted;  // pixel indices in acceptance order

  GridPoint seed_offset() const { return source - seed_pixel; }
};

PotentialField build_potential(const ScalarField& g, double mu, double w);

// First-order fast marching on the 4-neighborhood for |grad U| = P with
// U(seed) = 0. Pixels in `absorbing` receive arrival times from outside
// neighbors but never propagate the front themselves.
ArrivalTimeField fast_march(const PotentialField& potential, GridPoint source,
                            const BinaryMask* absorbing = nullptr);

// Same solver on a bare inverse-speed raster.
ArrivalTimeField fast_march(const ScalarField& inverse_speed, GridPoint source,
                            const BinaryMask* absorbing = nullptr);

}  // namespace spineneck
