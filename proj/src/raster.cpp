#include "spineneck/raster.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>

namespace spineneck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dims(int width, int height, int minimum) {
  if (width < minimum || height < minimum) {
    throw Error(ErrorCode::BadParameter, "raster dimensions " + std::to_string(width) + "x" +
                                             std::to_string(height) + " below minimum " +
                                             std::to_string(minimum));
  }
}

// Squared distance transform of a sampled function along one line
// (lower envelope of parabolas). Entries equal to +Inf are not sites.
void distance_1d(std::span<const double> f, std::span<double> out) {
  const int n = static_cast<int>(f.size());
  std::vector<int> sites;
  std::vector<double> bounds;
  sites.reserve(f.size());
  bounds.reserve(f.size() + 1);
  for (int q = 0; q < n; ++q) {
    if (!std::isfinite(f[q])) continue;
    const double fq = f[q] + static_cast<double>(q) * q;
    while (!sites.empty()) {
      const int v = sites.back();
      const double s = (fq - (f[v] + static_cast<double>(v) * v)) / (2.0 * (q - v));
      if (s <= bounds.back()) {
        sites.pop_back();
        bounds.pop_back();
      } else {
        sites.push_back(q);
        bounds.push_back(s);
        break;
      }
    }
    if (sites.empty()) {
      sites.push_back(q);
      bounds.push_back(-kInf);
    }
  }
  if (sites.empty()) {
    std::fill(out.begin(), out.end(), kInf);
    return;
  }
  std::size_t k = 0;
  for (int q = 0; q < n; ++q) {
    while (k + 1 < sites.size() && bounds[k + 1] < q) ++k;
    const double dq = q - sites[k];
    out[q] = dq * dq + f[sites[k]];
  }
}

constexpr std::array<std::array<int, 2>, 8> kMoore = {{
    {-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1},
}};

int moore_index(int dx, int dy) {
  for (int i = 0; i < 8; ++i) {
    if (kMoore[i][0] == dx && kMoore[i][1] == dy) return i;
  }
  return -1;
}

std::vector<std::pair<int, int>> trace_outer(const BinaryMask& component) {
  const int w = component.width();
  const int h = component.height();
  int sx = -1, sy = -1;
  for (int y = 0; y < h && sx < 0; ++y) {
    for (int x = 0; x < w; ++x) {
      if (component(x, y)) {
        sx = x;
        sy = y;
        break;
      }
    }
  }
  std::vector<std::pair<int, int>> trace;
  if (sx < 0) return trace;

  // State = (pixel, direction of the background pixel we came from).
  std::set<std::tuple<int, int, int>> seen;
  int cx = sx, cy = sy, back = 0;
  trace.emplace_back(cx, cy);
  while (seen.emplace(cx, cy, back).second) {
    int found = -1;
    for (int k = 1; k <= 8; ++k) {
      const int d = (back + k) % 8;
      if (component.get(cx + kMoore[d][0], cy + kMoore[d][1])) {
        found = k;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel
    const int d = (back + found) % 8;
    const int prev = (back + found - 1) % 8;
    const int nx = cx + kMoore[d][0];
    const int ny = cy + kMoore[d][1];
    const int bx = cx + kMoore[prev][0];
    const int by = cy + kMoore[prev][1];
    back = moore_index(bx - nx, by - ny);
    cx = nx;
    cy = ny;
    trace.emplace_back(cx, cy);
  }
  return trace;
}

}  // namespace

ScalarField::ScalarField(int width, int height, double fill)
    : width_(width), height_(height) {
  require_dims(width, height, 3);
  values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ScalarField::ScalarField(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  require_dims(width, height, 3);
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::DimensionMismatch, "value count does not match raster dimensions");
  }
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  require_dims(width, height, 1);
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  require_dims(width, height, 1);
  if (bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::DimensionMismatch, "mask bit count does not match dimensions");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool is_boundary_pixel(const BinaryMask& mask, int x, int y) {
  if (!mask.get(x, y)) return false;
  return !mask.get(x - 1, y) || !mask.get(x + 1, y) || !mask.get(x, y - 1) ||
         !mask.get(x, y + 1);
}

ScalarField normalize_image(const ScalarField& raw) {
  const auto values = raw.values();
  if (!raw.all_finite()) {
    throw Error(ErrorCode::BadParameter, "image contains non-finite values");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi == *lo) throw Error(ErrorCode::ConstantImage, "all pixels share one value");
  const double lo_v = *lo;
  const double span = *hi - *lo;
  ScalarField out = raw;
  for (double& v : out.values()) v = (v - lo_v) / span;
  return out;
}

ScalarField signed_distance(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  const std::size_t total = mask.count();
  if (total == 0) throw Error(ErrorCode::EmptyMask, "mask has no true pixels");
  if (total == static_cast<std::size_t>(w) * static_cast<std::size_t>(h)) {
    throw Error(ErrorCode::FullMask, "mask has no false pixels");
  }
  if (w < 3 || h < 3) throw Error(ErrorCode::BadParameter, "mask smaller than 3x3");

  std::vector<double> sq(static_cast<std::size_t>(w) * h, kInf);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (is_boundary_pixel(mask, x, y)) sq[mask.index(x, y)] = 0.0;
    }
  }
  std::vector<double> line_in(std::max(w, h));
  std::vector<double> line_out(std::max(w, h));
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) line_in[y] = sq[mask.index(x, y)];
    distance_1d(std::span(line_in).first(h), std::span(line_out).first(h));
    for (int y = 0; y < h; ++y) sq[mask.index(x, y)] = line_out[y];
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) line_in[x] = sq[mask.index(x, y)];
    distance_1d(std::span(line_in).first(w), std::span(line_out).first(w));
    for (int x = 0; x < w; ++x) sq[mask.index(x, y)] = line_out[x];
  }

  ScalarField phi(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double d = std::sqrt(sq[mask.index(x, y)]);
      phi(x, y) = mask(x, y) ? -d : d;
    }
  }
  return phi;
}

BinaryMask largest_component(const BinaryMask& mask, int* component_count) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  std::vector<std::size_t> sizes;
  std::queue<std::pair<int, int>> frontier;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask(x, y) || label[mask.index(x, y)] >= 0) continue;
      const int id = static_cast<int>(sizes.size());
      sizes.push_back(0);
      label[mask.index(x, y)] = id;
      frontier.emplace(x, y);
      while (!frontier.empty()) {
        auto [cx, cy] = frontier.front();
        frontier.pop();
        ++sizes[id];
        for (const auto& d : kMoore) {
          const int nx = cx + d[0];
          const int ny = cy + d[1];
          if (mask.get(nx, ny) && label[mask.index(nx, ny)] < 0) {
            label[mask.index(nx, ny)] = id;
            frontier.emplace(nx, ny);
          }
        }
      }
    }
  }
  if (component_count != nullptr) *component_count = static_cast<int>(sizes.size());
  BinaryMask out(w, h);
  if (sizes.empty()) return out;
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (label[mask.index(x, y)] == best) out.set(x, y, true);
    }
  }
  return out;
}

std::vector<GridPoint> extract_boundary(const BinaryMask& mask, Warnings* warnings) {
  if (mask.count() == 0) throw Error(ErrorCode::EmptyMask, "mask has no true pixels");
  int components = 0;
  const BinaryMask main = largest_component(mask, &components);
  if (components > 1) {
    warn(warnings, "mask has " + std::to_string(components) +
                       " connected components; using the largest");
  }

  const auto trace = trace_outer(main);
  std::vector<GridPoint> ring;
  std::set<std::pair<int, int>> kept;
  for (const auto& [x, y] : trace) {
    if (!is_boundary_pixel(main, x, y)) continue;
    if (kept.emplace(x, y).second) ring.push_back({double(x), double(y)});
  }

  double area2 = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const GridPoint a = ring[i];
    const GridPoint b = ring[(i + 1) % ring.size()];
    area2 += a.x * b.y - b.x * a.y;
  }
  if (area2 < 0.0) std::reverse(ring.begin() + 1, ring.end());
  return ring;
}

GridPoint centroid(const BinaryMask& mask) {
  double sx = 0.0, sy = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(x, y)) continue;
      sx += x;
      sy += y;
      ++n;
    }
  }
  if (n == 0) throw Error(ErrorCode::EmptyMask, "mask has no true pixels");
  return {sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

double sample_bilinear(const ScalarField& field, GridPoint p) {
  const double x = std::clamp(p.x, 0.0, double(field.width() - 1));
  const double y = std::clamp(p.y, 0.0, double(field.height() - 1));
  const int x0 = std::min(static_cast<int>(std::floor(x)), field.width() - 2);
  const int y0 = std::min(static_cast<int>(std::floor(y)), field.height() - 2);
  const double fx = x - x0;
  const double fy = y - y0;
  const std::array<double, 4> weights = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy,
                                         fx * fy};
  const std::array<double, 4> corners = {field(x0, y0), field(x0 + 1, y0), field(x0, y0 + 1),
                                         field(x0 + 1, y0 + 1)};
  double acc = 0.0, wsum = 0.0;
  bool dropped = false;
  for (int i = 0; i < 4; ++i) {
    if (weights[i] == 0.0) continue;
    if (!std::isfinite(corners[i])) {
      dropped = true;
      continue;
    }
    acc += weights[i] * corners[i];
    wsum += weights[i];
  }
  if (wsum == 0.0) return kInf;
  return dropped ? acc / wsum : acc;
}

}  // namespace spineneck
