#include "spineneck/spline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "spineneck/error.hpp"

namespace spineneck {

namespace {

std::vector<double> clamped_knots(double t0, double t1, int interior) {
  std::vector<double> k;
  k.reserve(static_cast<std::size_t>(interior) + 8);
  for (int i = 0; i < 4; ++i) k.push_back(t0);
  for (int i = 1; i <= interior; ++i) k.push_back(t0 + (t1 - t0) * i / (interior + 1));
  for (int i = 0; i < 4; ++i) k.push_back(t1);
  return k;
}

}  // namespace

CubicSpline::CubicSpline(double t_begin, double t_end, int interior_knots,
                         std::vector<double> coefficients)
    : t_begin_(t_begin),
      t_end_(t_end),
      interior_knots_(interior_knots),
      coefficients_(std::move(coefficients)) {
  if (!(t_end > t_begin) || interior_knots < 0 ||
      coefficients_.size() != static_cast<std::size_t>(interior_knots) + 4) {
    throw Error(ErrorCode::BadParameter, "inconsistent cubic spline definition");
  }
}

std::vector<double> CubicSpline::basis(double t, double t0, double t1, int interior) {
  const auto knots = clamped_knots(t0, t1, interior);
  const int n = interior + 4;
  t = std::clamp(t, t0, t1);
  // Span s with knots[s] <= t < knots[s+1], restricted to nonempty spans.
  int s = 3;
  while (s < n - 1 && t >= knots[s + 1]) ++s;

  // Nonzero cubic basis functions on span s (de Boor / Cox recursion).
  std::array<double, 4> basis_vals{1.0, 0.0, 0.0, 0.0};
  std::array<double, 4> left{}, right{};
  for (int j = 1; j <= 3; ++j) {
    left[j] = t - knots[s + 1 - j];
    right[j] = knots[s + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double denom = right[r + 1] + left[j - r];
      const double temp = denom == 0.0 ? 0.0 : basis_vals[r] / denom;
      basis_vals[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    basis_vals[j] = saved;
  }
  std::vector<double> out(n, 0.0);
  for (int r = 0; r < 4; ++r) out[s - 3 + r] = basis_vals[r];
  return out;
}

double CubicSpline::operator()(double t) const {
  const auto b = basis(t, t_begin_, t_end_, interior_knots_);
  double v = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) v += b[i] * coefficients_[i];
  return v;
}

CubicSpline fit_cubic_spline(std::span<const double> t, std::span<const double> y,
                             int interior_knots) {
  if (t.size() != y.size() || t.size() < 2) {
    throw Error(ErrorCode::FitFailure, "spline fit needs matching samples, at least two");
  }
  if (interior_knots < 0) throw Error(ErrorCode::BadParameter, "negative knot count");
  const double t0 = t.front();
  const double t1 = t.back();
  if (!(t1 > t0)) throw Error(ErrorCode::FitFailure, "spline parameter range is empty");

  const int nb = interior_knots + 4;
  const int m = static_cast<int>(t.size());
  Eigen::MatrixXd a(m, nb);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const auto row = CubicSpline::basis(t[i], t0, t1, interior_knots);
    for (int j = 0; j < nb; ++j) a(i, j) = row[j];
    b(i) = y[i];
  }

  // KKT system for min |A c - b|^2 subject to interpolating both ends.
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nb + 2, nb + 2);
  Eigen::VectorXd rhs(nb + 2);
  kkt.topLeftCorner(nb, nb) = a.transpose() * a;
  rhs.head(nb) = a.transpose() * b;
  kkt.block(nb, 0, 1, nb) = a.row(0);
  kkt.block(nb + 1, 0, 1, nb) = a.row(m - 1);
  kkt.block(0, nb, nb, 1) = a.row(0).transpose();
  kkt.block(0, nb + 1, nb, 1) = a.row(m - 1).transpose();
  rhs(nb) = y.front();
  rhs(nb + 1) = y.back();

  Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  lu.setThreshold(1e-10);
  if (lu.rank() < nb + 2) {
    throw Error(ErrorCode::FitFailure, "singular spline normal equations (rank " +
                                           std::to_string(lu.rank()) + " of " +
                                           std::to_string(nb + 2) + ")");
  }
  const Eigen::VectorXd sol = lu.solve(rhs);
  std::vector<double> coeffs(sol.data(), sol.data() + nb);
  return CubicSpline(t0, t1, interior_knots, std::move(coeffs));
}

}  // namespace spineneck
