#pragma once

#include <string>
#include <vector>

#include "spineneck/raster.hpp"

namespace spineneck {

struct PointSet2D {
  std::vector<GridPoint> points;
  std::string label;
};

// Symmetric mean nearest-neighbor distance:
// mean_i min_j |u_i - v_j| + mean_j min_i |v_j - u_i|, in pixels.
double mae(const PointSet2D& u, const PointSet2D& v);
double mae(const std::vector<GridPoint>& u, const std::vector<GridPoint>& v);

// Inserts evenly spaced points so that no segment exceeds `spacing`.
std::vector<GridPoint> densify(const std::vector<GridPoint>& polyline, double spacing = 1.0);

// MAE between two centerlines after densifying both to 1 px spacing.
double centerline_mae(const std::vector<GridPoint>& reconstruction,
                      const std::vector<GridPoint>& truth);

}  // namespace spineneck
