#pragma once

#include <span>
#include <vector>

namespace spineneck {

// Clamped cubic B-spline on [t_begin, t_end] with uniform interior knots.
class CubicSpline {
 public:
  CubicSpline(double t_begin, double t_end, int interior_knots, std::vector<double> coefficients);

  double operator()(double t) const;
  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }
  int basis_count() const { return static_cast<int>(coefficients_.size()); }

  // Values of all basis functions at t (length interior_knots + 4).
  static std::vector<double> basis(double t, double t_begin, double t_end, int interior_knots);

 private:
  double t_begin_;
  double t_end_;
  int interior_knots_;
  std::vector<double> coefficients_;
};

// Least-squares cubic spline through (t_i, y_i) with `interior_knots`
// uniform knots, constrained to interpolate the first and last samples.
// Throws FitFailure when the constrained normal equations are singular.
CubicSpline fit_cubic_spline(std::span<const double> t, std::span<const double> y,
                             int interior_knots);

}  // namespace spineneck
