#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spineneck/pipeline.hpp"

namespace spineneck {

struct EvaluationScene {
  SceneInputs inputs;
  std::vector<GridPoint> truth;
};

struct SweepRow {
  double mu = 0.0;
  Method method = Method::Proposed;
  double mean_mae = 0.0;  // NaN when every run failed
  double std_mae = 0.0;   // population standard deviation over runs
  int runs = 0;           // successful runs
  int failures = 0;
};

// Runs both methods `runs_per_mu` times per mu value; run k uses
// derive_seed(base_seed, k). MAE is the centerline MAE of the spline.
std::vector<SweepRow> mu_sweep(const EvaluationScene& scene, const std::vector<double>& mu_values,
                               int runs_per_mu, std::uint64_t base_seed,
                               const RunConfig& base = {});

// Population standard deviation of the per-mu mean MAE for one method
// (failed cells skipped).
double spread_across_mu(const std::vector<SweepRow>& rows, Method method);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace spineneck
