#include "spineneck/pathspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spineneck/spline.hpp"

namespace spineneck {

std::vector<double> parameterize(const GeodesicPath& path, const ScalarField& phi,
                                 GridPoint head) {
  const double phi_h = sample_bilinear(phi, head);
  if (!(phi_h > 0.0)) {
    throw Error(ErrorCode::HeadInsideShaft, "head centroid is not strictly outside the shaft");
  }
  std::vector<double> lambdas;
  lambdas.reserve(path.points.size());
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    if (i == 0 && path.points[0] == head) {
      lambdas.push_back(0.0);
      continue;
    }
    const double value = 1.0 - sample_bilinear(phi, path.points[i]) / phi_h;
    lambdas.push_back(std::clamp(value, 0.0, 1.0));
  }
  return lambdas;
}

CandidatePathSet make_candidate_set(std::vector<GeodesicPath> paths, const ScalarField& phi,
                                    GridPoint head) {
  if (paths.empty()) throw Error(ErrorCode::EmptySet, "no candidate paths");
  CandidatePathSet set;
  set.head = head;
  set.phi_h = sample_bilinear(phi, head);
  set.lambdas.reserve(paths.size());
  for (const auto& p : paths) set.lambdas.push_back(parameterize(p, phi, head));
  set.paths = std::move(paths);
  return set;
}

GridPoint resample_at(const GeodesicPath& path, const std::vector<double>& lambdas,
                      double lambda) {
  const auto& pts = path.points;
  if (pts.size() != lambdas.size() || pts.size() < 2) {
    throw Error(ErrorCode::BadParameter, "path and lambda counts differ");
  }
  if (lambdas.front() >= lambda) return pts.front();
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (lambdas[k + 1] < lambda) continue;
    const double span = lambdas[k + 1] - lambdas[k];
    const double t = span > 0.0 ? (lambda - lambdas[k]) / span : 1.0;
    return pts[k] + t * (pts[k + 1] - pts[k]);
  }
  throw Error(ErrorCode::NoCrossing, "path never reaches lambda " + std::to_string(lambda));
}

std::vector<GridPoint> resample(const GeodesicPath& path, const std::vector<double>& lambdas,
                                const std::vector<double>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw Error(ErrorCode::BadParameter, "lambda grid must increase strictly inside (0,1)");
    }
  }
  std::vector<GridPoint> out;
  out.reserve(grid.size());
  for (double l : grid) out.push_back(resample_at(path, lambdas, l));
  return out;
}

LevelSetRanking rank_on_level_set(const std::vector<GridPoint>& points,
                                  const std::vector<Contour>& contours) {
  if (points.empty()) throw Error(ErrorCode::EmptySet, "no points to rank");
  if (contours.empty()) throw Error(ErrorCode::NoContour, "level set is empty");

  LevelSetRanking ranking;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_vertex;
  std::vector<std::size_t> nearest(points.size());
  for (std::size_t c = 0; c < contours.size(); ++c) {
    if (contours[c].vertices.empty()) continue;
    double cost = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      nearest[i] = nearest_vertex(contours[c], points[i]);
      cost += distance(points[i], contours[c].vertices[nearest[i]]);
    }
    if (cost < best_cost) {
      best_cost = cost;
      ranking.contour = c;
      best_vertex = nearest;
    }
  }
  if (best_vertex.empty()) throw Error(ErrorCode::NoContour, "level set is empty");

  const Contour& contour = contours[ranking.contour];
  ranking.positions.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    ranking.positions[i] = contour.arc[best_vertex[i]];
  }
  if (contour.closed && points.size() > 1 && contour.length > 0.0) {
    std::vector<double> sorted = ranking.positions;
    std::sort(sorted.begin(), sorted.end());
    double gap = sorted.front() + contour.length - sorted.back();
    double cut = sorted.back() + 0.5 * gap;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      if (sorted[i + 1] - sorted[i] > gap) {
        gap = sorted[i + 1] - sorted[i];
        cut = sorted[i] + 0.5 * gap;
      }
    }
    for (double& p : ranking.positions) {
      p = std::fmod(p - cut + 2.0 * contour.length, contour.length);
    }
  }
  return ranking;
}

std::size_t intrinsic_median_index(const std::vector<GridPoint>& points,
                                   const std::vector<Contour>& contours) {
  const LevelSetRanking ranking = rank_on_level_set(points, contours);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ranking.positions[a] != ranking.positions[b]) {
      return ranking.positions[a] < ranking.positions[b];
    }
    if (points[a].x != points[b].x) return points[a].x < points[b].x;
    if (points[a].y != points[b].y) return points[a].y < points[b].y;
    return a < b;
  });
  return order[(order.size() - 1) / 2];
}

GridPoint intrinsic_median(const std::vector<GridPoint>& points, const ScalarField& phi,
                           double level) {
  if (points.empty()) throw Error(ErrorCode::EmptySet, "no points for the median");
  if (!(level > 0.0)) throw Error(ErrorCode::BadParameter, "median level must be positive");
  if (points.size() == 1) return points.front();
  const auto contours = iso_contours(phi, level);
  return points[intrinsic_median_index(points, contours)];
}

SpineReconstruction estimate_path(const CandidatePathSet& candidates, const ScalarField& phi,
                                  int n_lambda, Warnings* warnings) {
  if (n_lambda < 3) throw Error(ErrorCode::BadParameter, "need at least 3 lambda samples");
  if (candidates.n() == 0) throw Error(ErrorCode::EmptySet, "no candidate paths");
  if (!(candidates.phi_h > 0.0)) {
    throw Error(ErrorCode::HeadInsideShaft, "head centroid is not strictly outside the shaft");
  }
  SpineReconstruction recon;
  recon.params.n_lambda = n_lambda;
  recon.params.n_terminals = static_cast<int>(candidates.n());
  std::size_t excluded = 0;
  for (int i = 1; i <= n_lambda; ++i) {
    const double lambda = static_cast<double>(i) / (n_lambda + 1);
    std::vector<GridPoint> samples;
    samples.reserve(candidates.n());
    for (std::size_t c = 0; c < candidates.n(); ++c) {
      try {
        samples.push_back(resample_at(candidates.paths[c], candidates.lambdas[c], lambda));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoCrossing) throw;
        ++excluded;
      }
    }
    if (samples.empty()) {
      throw Error(ErrorCode::AllCandidatesFailed,
                  "no candidate reaches lambda " + std::to_string(lambda));
    }
    const double level = (1.0 - lambda) * candidates.phi_h;
    recon.lambda_grid.push_back(lambda);
    recon.median_points.push_back(intrinsic_median(samples, phi, level));
    recon.support.push_back(samples.size());
  }
  if (excluded > 0) {
    warn(warnings, std::to_string(excluded) + " candidate samples excluded for lack of a crossing");
  }
  return recon;
}

int default_interior_knots(int n_lambda) { return std::max(2, n_lambda / 5); }

SpineReconstruction spline_smooth(SpineReconstruction recon, int samples, Warnings* warnings) {
  const int n = static_cast<int>(recon.median_points.size());
  if (n < 3) throw Error(ErrorCode::BadParameter, "spline smoothing needs 3 median points");
  if (samples < n) throw Error(ErrorCode::BadParameter, "spline samples must be at least N");
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = recon.median_points[i].x;
    ys[i] = recon.median_points[i].y;
  }
  const double t0 = recon.lambda_grid.front();
  const double t1 = recon.lambda_grid.back();
  recon.spline_lambdas.clear();
  recon.spline_points.clear();
  for (int j = 0; j < samples; ++j) {
    recon.spline_lambdas.push_back(t0 + (t1 - t0) * j / (samples - 1));
  }
  recon.params.spline_samples = samples;
  try {
    const int knots = default_interior_knots(n);
    const CubicSpline sx = fit_cubic_spline(recon.lambda_grid, xs, knots);
    const CubicSpline sy = fit_cubic_spline(recon.lambda_grid, ys, knots);
    for (double t : recon.spline_lambdas) recon.spline_points.push_back({sx(t), sy(t)});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FitFailure) throw;
    warn(warnings, std::string("spline fit failed, using the median polyline: ") + e.what());
    for (double t : recon.spline_lambdas) {
      std::size_t k = 0;
      while (k + 2 < recon.lambda_grid.size() && recon.lambda_grid[k + 1] < t) ++k;
      const double a = recon.lambda_grid[k];
      const double b = recon.lambda_grid[k + 1];
      const double u = std::clamp((t - a) / (b - a), 0.0, 1.0);
      recon.spline_points.push_back(recon.median_points[k] +
                                    u * (recon.median_points[k + 1] - recon.median_points[k]));
    }
  }
  return recon;
}

}  // namespace spineneck
