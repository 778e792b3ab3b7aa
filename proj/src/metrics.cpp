#include "spineneck/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spineneck {

namespace {

double mean_nearest(const std::vector<GridPoint>& from, const std::vector<GridPoint>& to) {
  double sum = 0.0;
  for (const GridPoint& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const GridPoint& q : to) best = std::min(best, distance(p, q));
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

}  // namespace

double mae(const std::vector<GridPoint>& u, const std::vector<GridPoint>& v) {
  if (u.empty() || v.empty()) throw Error(ErrorCode::EmptySet, "MAE needs two nonempty sets");
  return mean_nearest(u, v) + mean_nearest(v, u);
}

double mae(const PointSet2D& u, const PointSet2D& v) { return mae(u.points, v.points); }

std::vector<GridPoint> densify(const std::vector<GridPoint>& polyline, double spacing) {
  if (!(spacing > 0.0)) throw Error(ErrorCode::BadParameter, "spacing must be positive");
  if (polyline.size() < 2) return polyline;
  std::vector<GridPoint> out{polyline.front()};
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const GridPoint a = polyline[i - 1];
    const GridPoint b = polyline[i];
    const int pieces = std::max(1, static_cast<int>(std::ceil(distance(a, b) / spacing - 1e-9)));
    for (int k = 1; k <= pieces; ++k) out.push_back(a + (double(k) / pieces) * (b - a));
  }
  return out;
}

double centerline_mae(const std::vector<GridPoint>& reconstruction,
                      const std::vector<GridPoint>& truth) {
  return mae(densify(reconstruction), densify(truth));
}

}  // namespace spineneck
