#pragma once

#include <string>
#include <vector>

#include "spineneck/raster.hpp"

namespace spineneck {

struct OverlayLayers {
  const ScalarField* image = nullptr;  // drawn min/max scaled as the background
  std::vector<GridPoint> shaft_contour;
  std::vector<GridPoint> head_contour;
  std::vector<GridPoint> prediction;
  std::vector<GridPoint> median_points;
  std::vector<GridPoint> truth;          // optional
  std::vector<std::vector<GridPoint>> candidates;  // optional, drawn faint
};

// SVG document with the image embedded as a base64 BMP. Pixel (x, y) is
// centered at (x + 0.5, y + 0.5) in user units, scaled by `scale`.
std::string render_overlay(const OverlayLayers& layers, double scale = 4.0);

std::string base64_encode(const std::vector<unsigned char>& bytes);

}  // namespace spineneck
