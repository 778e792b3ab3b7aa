#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "spineneck/error.hpp"

namespace spineneck {

// Real-valued image coordinate; integer values are pixel centers.
struct GridPoint {
  double x = 0.0;
  double y = 0.0;

  friend GridPoint operator+(GridPoint a, GridPoint b) { return {a.x + b.x, a.y + b.y}; }
  friend GridPoint operator-(GridPoint a, GridPoint b) { return {a.x - b.x, a.y - b.y}; }
  friend GridPoint operator*(double s, GridPoint p) { return {s * p.x, s * p.y}; }
  friend bool operator==(GridPoint a, GridPoint b) = default;

  double norm() const { return std::hypot(x, y); }
};

inline double distance(GridPoint a, GridPoint b) { return (a - b).norm(); }

// Row-major raster of doubles. Arrival-time fields may hold +Inf for
// unreached pixels; everything produced by the raster operations is finite.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int width, int height, double fill = 0.0);
  ScalarField(int width, int height, std::vector<double> values);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }

  double operator()(int x, int y) const { return values_[index(x, y)]; }
  double& operator()(int x, int y) { return values_[index(x, y)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  bool contains(GridPoint p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= width_ - 1 && p.y <= height_ - 1;
  }
  bool all_finite() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }

  bool operator()(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool value) { bits_[index(x, y)] = value ? 1 : 0; }

  // Out-of-grid pixels read as false.
  bool get(int x, int y) const { return contains(x, y) && (*this)(x, y); }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  std::size_t count() const;
  std::span<const std::uint8_t> bits() const { return bits_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

// A mask pixel is on the boundary when one of its 4-neighbors is false or
// lies outside the grid.
bool is_boundary_pixel(const BinaryMask& mask, int x, int y);

// Linear rescale so that the minimum maps to 0 and the maximum to 1.
ScalarField normalize_image(const ScalarField& raw);

// Exact signed Euclidean distance to the set of mask boundary pixels:
// positive outside, negative inside, zero on boundary pixels.
ScalarField signed_distance(const BinaryMask& mask);

// Outer contour of the largest 8-connected component, starting at its first
// pixel in raster order and oriented counterclockwise in (x, y) coordinates
// (positive shoelace area). Pixels visited twice by the trace are kept once.
std::vector<GridPoint> extract_boundary(const BinaryMask& mask, Warnings* warnings = nullptr);

GridPoint centroid(const BinaryMask& mask);

// Mask restricted to its largest 8-connected component (ties: first in raster order).
BinaryMask largest_component(const BinaryMask& mask, int* component_count = nullptr);

// Bilinear interpolation with coordinates clamped to the grid. Non-finite
// corners are dropped and the remaining weights renormalized; returns +Inf
// when every contributing corner is non-finite.
double sample_bilinear(const ScalarField& field, GridPoint p);

}  // namespace spineneck
