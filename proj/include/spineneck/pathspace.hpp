#pragma once

#include <cstdint>
#include <vector>

#include "spineneck/contour.hpp"
#include "spineneck/geodesic.hpp"

namespace spineneck {

// Observed candidate paths with the shaft-level-set curve parameter
// lambda = 1 - phi / phi(head) attached to every vertex.
struct CandidatePathSet {
  std::vector<GeodesicPath> paths;
  std::vector<std::vector<double>> lambdas;
  GridPoint head;
  double phi_h = 0.0;

  std::size_t n() const { return paths.size(); }
};

struct ReconstructionParams {
  double mu = 7.0;
  double w = 0.01;
  int n_terminals = 15;
  int n_lambda = 25;
  int spline_samples = 100;
  std::uint64_t seed = 0;
  double step = 0.5;
};

struct SpineReconstruction {
  std::vector<double> lambda_grid;
  std::vector<GridPoint> median_points;
  std::vector<double> spline_lambdas;
  std::vector<GridPoint> spline_points;
  std::vector<std::size_t> support;  // candidates that crossed each lambda_i
  ReconstructionParams params;
};

// Per-vertex lambda, clamped to [0,1]; the first vertex (the head) is 0.
std::vector<double> parameterize(const GeodesicPath& path, const ScalarField& phi,
                                 GridPoint head);

CandidatePathSet make_candidate_set(std::vector<GeodesicPath> paths, const ScalarField& phi,
                                    GridPoint head);

// Point where lambda first reaches each grid value walking from the head,
// linearly interpolated inside the crossing segment.
std::vector<GridPoint> resample(const GeodesicPath& path, const std::vector<double>& lambdas,
                                const std::vector<double>& grid);
GridPoint resample_at(const GeodesicPath& path, const std::vector<double>& lambdas,
                      double lambda);

// Positions of points along the phi iso-contour closest to them (minimum
// summed distance to the nearest contour vertex). On closed contours the
// origin is placed in the middle of the largest gap between the points.
struct LevelSetRanking {
  std::size_t contour = 0;
  std::vector<double> positions;
};
LevelSetRanking rank_on_level_set(const std::vector<GridPoint>& points,
                                  const std::vector<Contour>& contours);

// Index of the candidate at the median rank by contour position (lower
// middle for even counts; ties broken by coordinates).
std::size_t intrinsic_median_index(const std::vector<GridPoint>& points,
                                   const std::vector<Contour>& contours);
GridPoint intrinsic_median(const std::vector<GridPoint>& points, const ScalarField& phi,
                           double level);

// Pointwise intrinsic median on lambda_i = i / (N + 1), i = 1..N.
SpineReconstruction estimate_path(const CandidatePathSet& candidates, const ScalarField& phi,
                                  int n_lambda, Warnings* warnings = nullptr);

// Least-squares cubic spline of x(lambda) and y(lambda) with
// max(2, N / 5) interior knots, evaluated at `samples` uniform lambdas over
// the estimated range. Falls back to the median polyline if the fit is singular.
SpineReconstruction spline_smooth(SpineReconstruction recon, int samples,
                                  Warnings* warnings = nullptr);

int default_interior_knots(int n_lambda);

}  // namespace spineneck
