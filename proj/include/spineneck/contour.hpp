#pragma once

#include <vector>

#include "spineneck/raster.hpp"

namespace spineneck {

// One connected piece of an iso-contour. `arc[i]` is the polyline length
// from vertices[0] to vertices[i]; closed loops do not repeat the first
// vertex, and `length` includes the closing segment.
struct Contour {
  std::vector<GridPoint> vertices;
  std::vector<double> arc;
  bool closed = false;
  double length = 0.0;
};

// Marching squares over the cells spanned by pixel centers. A corner is
// "above" when its value is >= level; saddle cells are resolved by the
// mean of the four corners. Open pieces end on the grid border.
std::vector<Contour> iso_contours(const ScalarField& field, double level);

// Index of the contour vertex nearest to p (ties: lowest index).
std::size_t nearest_vertex(const Contour& contour, GridPoint p);

}  // namespace spineneck
