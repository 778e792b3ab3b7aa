#include "spineneck/sweep.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "spineneck/metrics.hpp"
#include "spineneck/random.hpp"
#include "spineneck/raster_io.hpp"

namespace spineneck {

namespace {

void mean_std(const std::vector<double>& v, double& mean, double& sd) {
  if (v.empty()) {
    mean = sd = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  double s = 0.0;
  for (double x : v) s += x;
  mean = s / static_cast<double>(v.size());
  double q = 0.0;
  for (double x : v) q += (x - mean) * (x - mean);
  sd = std::sqrt(q / static_cast<double>(v.size()));
}

}  // namespace

std::vector<SweepRow> mu_sweep(const EvaluationScene& scene, const std::vector<double>& mu_values,
                               int runs_per_mu, std::uint64_t base_seed, const RunConfig& base) {
  if (mu_values.empty()) throw Error(ErrorCode::BadParameter, "mu list is empty");
  if (runs_per_mu < 1) throw Error(ErrorCode::BadParameter, "runs per mu must be >= 1");
  if (scene.truth.empty()) throw Error(ErrorCode::EmptySet, "scene has no ground truth");
  std::vector<SweepRow> rows;
  for (double mu : mu_values) {
    for (Method method : {Method::Proposed, Method::Baseline}) {
      SweepRow row;
      row.mu = mu;
      row.method = method;
      std::vector<double> maes;
      for (int k = 0; k < runs_per_mu; ++k) {
        RunConfig cfg = base;
        cfg.mu = mu;
        cfg.method = method;
        cfg.seed = derive_seed(base_seed, static_cast<std::uint64_t>(k));
        try {
          const PipelineResult r = reconstruct(scene.inputs, cfg);
          maes.push_back(centerline_mae(r.recon.spline_points, scene.truth));
        } catch (const Error&) {
          ++row.failures;
        }
      }
      row.runs = static_cast<int>(maes.size());
      mean_std(maes, row.mean_mae, row.std_mae);
      rows.push_back(row);
    }
  }
  return rows;
}

double spread_across_mu(const std::vector<SweepRow>& rows, Method method) {
  std::vector<double> means;
  for (const auto& r : rows) {
    if (r.method == method && r.runs > 0) means.push_back(r.mean_mae);
  }
  double mean = 0.0, sd = 0.0;
  mean_std(means, mean, sd);
  return sd;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "mu,method,mean_mae,std_mae,runs,failures\n";
  for (const auto& r : rows) {
    out << io::format_real(r.mu) << ',' << to_string(r.method) << ','
        << (r.runs > 0 ? io::format_real(r.mean_mae) : "") << ','
        << (r.runs > 0 ? io::format_real(r.std_mae) : "") << ',' << r.runs << ',' << r.failures
        << '\n';
  }
  return out.str();
}

}  // namespace spineneck
