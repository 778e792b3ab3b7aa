#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spineneck/raster.hpp"

namespace spineneck {

struct DistractorDisc {
  GridPoint center;
  double radius = 1.0;
  double intensity = 1.0;
};

// Synthetic dendrite scene. Shaft and head render at intensity 1, the neck
// at `neck_attenuation`, distractors at their own intensity, all composited
// by maximum over a zero background.
struct PhantomConfig {
  int width = 128;
  int height = 128;
  std::vector<GridPoint> shaft;  // centerline polyline
  double shaft_radius = 8.0;
  GridPoint head_center;
  double head_radius = 6.0;
  std::vector<GridPoint> neck;  // from the head boundary to the shaft boundary
  double neck_width = 3.0;
  double neck_attenuation = 0.3;
  std::vector<DistractorDisc> distractors;
  double blur_sigma = 1.0;
  double noise_sigma = 0.05;
  std::uint64_t seed = 0;
};

struct PhantomScene {
  ScalarField image;
  BinaryMask head_mask;
  BinaryMask shaft_mask;
  std::vector<GridPoint> truth_centerline;  // head centroid to shaft boundary, 1 px spacing
  PhantomConfig config;
};

PhantomScene generate(const PhantomConfig& config);

// 128x128 scene with a vertical shaft, a head 30 px from it joined by a
// curved attenuated neck, and one bright disc offering a cheaper false route.
PhantomConfig standard_phantom_config();

// Preset lookup by name ("standard"); throws BadParameter for unknown names.
PhantomConfig preset_config(std::string_view name);

std::string config_to_json(const PhantomConfig& config);
PhantomConfig config_from_json(std::string_view text);

// Separable Gaussian blur truncated at 3 sigma with edge replication.
ScalarField gaussian_blur(const ScalarField& image, double sigma);

// Quadratic Bezier curve sampled with `segments` pieces.
std::vector<GridPoint> bezier(GridPoint a, GridPoint control, GridPoint b, int segments = 32);

double distance_to_polyline(GridPoint p, const std::vector<GridPoint>& polyline);

}  // namespace spineneck
