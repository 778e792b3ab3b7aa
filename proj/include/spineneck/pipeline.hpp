#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spineneck/eikonal.hpp"
#include "spineneck/pathspace.hpp"
#include "spineneck/sampler.hpp"

namespace spineneck {

enum class Method { Proposed, Baseline };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

struct RunConfig {
  double mu = 7.0;
  double w = 0.01;
  int n_terminals = 15;
  int n_lambda = 25;
  int spline_samples = 100;
  std::uint64_t seed = 0;
  Method method = Method::Proposed;
  double step = 0.5;
  double tol = 1.0;
  // Shaft pixels take arrival times but do not carry the front onward.
  bool absorbing_shaft = true;
};

struct SceneInputs {
  ScalarField image;  // raw gray levels; normalized by the pipeline
  BinaryMask head;
  BinaryMask shaft;
};

struct PipelineResult {
  SpineReconstruction recon;
  CandidatePathSet candidates;
  GridPoint head_centroid;
  GridPoint seed_pixel;
  std::vector<GridPoint> boundary;
  WeightedBoundary weighted;
  std::vector<GridPoint> terminals;
  ScalarField phi;
  ArrivalTimeField arrival;
  Warnings warnings;
};

// normalize -> signed distance -> centroid -> potential -> fast march ->
// boundary weights -> terminals -> traces -> pointwise median -> spline.
// Errors are rethrown with the failing stage name prefixed.
PipelineResult reconstruct(const SceneInputs& inputs, const RunConfig& config);

}  // namespace spineneck
