#include "spineneck/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>

#include "spineneck/metrics.hpp"
#include "spineneck/random.hpp"

namespace spineneck {

namespace {

using nlohmann::json;

json point_json(GridPoint p) { return json::array({p.x, p.y}); }

GridPoint point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::ParseError, "point must be a two-element array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json polyline_json(const std::vector<GridPoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(point_json(p));
  return arr;
}

std::vector<GridPoint> polyline_from(const json& j) {
  std::vector<GridPoint> pts;
  for (const auto& e : j) pts.push_back(point_from(e));
  return pts;
}

void validate(const PhantomConfig& c) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::GeometryError, what); };
  if (c.width < 3 || c.height < 3) fail("grid must be at least 3x3");
  if (c.shaft.empty()) fail("shaft polyline is empty");
  if (c.neck.size() < 2) fail("neck polyline needs at least two points");
  if (c.shaft_radius < 1.0 || c.head_radius < 1.0 || c.neck_width < 1.0) {
    fail("radii and neck width must be at least 1 px");
  }
  for (const auto& d : c.distractors) {
    if (d.radius < 1.0) fail("distractor radius must be at least 1 px");
    if (!(d.intensity >= 0.0)) fail("distractor intensity must be nonnegative");
  }
  if (!(c.neck_attenuation > 0.0 && c.neck_attenuation <= 1.0)) {
    fail("neck attenuation must lie in (0, 1]");
  }
  if (!(c.noise_sigma >= 0.0) || !(c.blur_sigma >= 0.0)) fail("sigmas must be nonnegative");
  const double head_gap = std::abs(distance(c.neck.front(), c.head_center) - c.head_radius);
  if (head_gap > 1.0) fail("neck does not start on the head boundary");
  const double shaft_gap = std::abs(distance_to_polyline(c.neck.back(), c.shaft) - c.shaft_radius);
  if (shaft_gap > 1.0) fail("neck does not end on the shaft boundary");
}

}  // namespace

double distance_to_polyline(GridPoint p, const std::vector<GridPoint>& line) {
  if (line.size() == 1) return distance(p, line.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const GridPoint a = line[i];
    const GridPoint ab = line[i + 1] - a;
    const double len2 = ab.x * ab.x + ab.y * ab.y;
    double t = len2 > 0.0 ? ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, distance(p, a + t * ab));
  }
  return best;
}

std::vector<GridPoint> bezier(GridPoint a, GridPoint control, GridPoint b, int segments) {
  std::vector<GridPoint> out;
  for (int i = 0; i <= segments; ++i) {
    const double t = static_cast<double>(i) / segments;
    const double u = 1.0 - t;
    out.push_back((u * u) * a + (2.0 * u * t) * control + (t * t) * b);
  }
  return out;
}

ScalarField gaussian_blur(const ScalarField& image, double sigma) {
  if (sigma <= 0.0) return image;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
    sum += kernel[k + radius];
  }
  for (double& k : kernel) k /= sum;

  const int w = image.width();
  const int h = image.height();
  ScalarField tmp(w, h);
  ScalarField out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * image(std::clamp(x + k, 0, w - 1), y);
      }
      tmp(x, y) = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * tmp(x, std::clamp(y + k, 0, h - 1));
      }
      out(x, y) = acc;
    }
  }
  return out;
}

PhantomScene generate(const PhantomConfig& config) {
  validate(config);
  const int w = config.width;
  const int h = config.height;
  PhantomScene scene{ScalarField(w, h), BinaryMask(w, h), BinaryMask(w, h), {}, config};

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const GridPoint p{double(x), double(y)};
      const bool in_shaft = distance_to_polyline(p, config.shaft) <= config.shaft_radius;
      const bool in_head = distance(p, config.head_center) <= config.head_radius;
      double v = 0.0;
      if (in_shaft || in_head) v = 1.0;
      if (distance_to_polyline(p, config.neck) <= 0.5 * config.neck_width) {
        v = std::max(v, config.neck_attenuation);
      }
      for (const auto& d : config.distractors) {
        if (distance(p, d.center) <= d.radius) v = std::max(v, d.intensity);
      }
      scene.image(x, y) = v;
      scene.shaft_mask.set(x, y, in_shaft);
      scene.head_mask.set(x, y, in_head);
      if (in_shaft && in_head) {
        throw Error(ErrorCode::GeometryError, "head and shaft overlap");
      }
    }
  }
  if (scene.head_mask.count() == 0 || scene.shaft_mask.count() == 0) {
    throw Error(ErrorCode::GeometryError, "head or shaft lies outside the grid");
  }

  scene.image = gaussian_blur(scene.image, config.blur_sigma);
  if (config.noise_sigma > 0.0) {
    Rng rng(config.seed);
    for (double& v : scene.image.values()) v += config.noise_sigma * rng.normal();
  }
  // Intensities are stored in [0,1] so the PGM bundle round-trips.
  for (double& v : scene.image.values()) v = std::clamp(v, 0.0, 1.0);

  std::vector<GridPoint> truth{centroid(scene.head_mask)};
  truth.insert(truth.end(), config.neck.begin(), config.neck.end());
  scene.truth_centerline = densify(truth, 1.0);

  double to_boundary = std::numeric_limits<double>::infinity();
  const GridPoint end = scene.truth_centerline.back();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (is_boundary_pixel(scene.shaft_mask, x, y)) {
        to_boundary = std::min(to_boundary, distance(end, {double(x), double(y)}));
      }
    }
  }
  if (to_boundary > 1.0) {
    throw Error(ErrorCode::GeometryError, "neck end is not within 1 px of the shaft boundary");
  }
  return scene;
}

PhantomConfig standard_phantom_config() {
  PhantomConfig c;
  c.width = 128;
  c.height = 128;
  c.shaft = {{100.0, -20.0}, {100.0, 148.0}};
  c.shaft_radius = 8.0;
  c.head_center = {62.0, 20.0};
  c.head_radius = 6.0;
  const GridPoint control{71.0, 40.0};
  const GridPoint toward = control - c.head_center;
  const GridPoint neck_start = c.head_center + (c.head_radius / toward.norm()) * toward;
  c.neck = bezier(neck_start, control, {92.0, 40.0}, 32);
  c.neck_width = 3.0;
  c.neck_attenuation = 0.3;
  // Bright disc bridging the head to the top of the shaft: the cheapest
  // single route, but one that only a small stretch of the shaft prefers.
  c.distractors = {{{75.0, 2.0}, 11.0, 1.0}};
  c.blur_sigma = 1.0;
  c.noise_sigma = 0.05;
  c.seed = 0;
  return c;
}

PhantomConfig preset_config(std::string_view name) {
  if (name == "standard") return standard_phantom_config();
  throw Error(ErrorCode::BadParameter, "unknown phantom preset '" + std::string(name) + "'");
}

std::string config_to_json(const PhantomConfig& c) {
  json distractors = json::array();
  for (const auto& d : c.distractors) {
    distractors.push_back(
        {{"center", point_json(d.center)}, {"radius", d.radius}, {"intensity", d.intensity}});
  }
  json j = {
      {"width", c.width},
      {"height", c.height},
      {"shaft", {{"polyline", polyline_json(c.shaft)}, {"radius", c.shaft_radius}}},
      {"head", {{"center", point_json(c.head_center)}, {"radius", c.head_radius}}},
      {"neck",
       {{"polyline", polyline_json(c.neck)},
        {"width", c.neck_width},
        {"attenuation", c.neck_attenuation}}},
      {"distractors", distractors},
      {"blur_sigma", c.blur_sigma},
      {"noise_sigma", c.noise_sigma},
      {"seed", c.seed},
  };
  return j.dump(2);
}

PhantomConfig config_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    PhantomConfig c;
    c.width = j.at("width").get<int>();
    c.height = j.at("height").get<int>();
    c.shaft = polyline_from(j.at("shaft").at("polyline"));
    c.shaft_radius = j.at("shaft").at("radius").get<double>();
    c.head_center = point_from(j.at("head").at("center"));
    c.head_radius = j.at("head").at("radius").get<double>();
    c.neck = polyline_from(j.at("neck").at("polyline"));
    c.neck_width = j.at("neck").at("width").get<double>();
    c.neck_attenuation = j.at("neck").at("attenuation").get<double>();
    c.distractors.clear();
    for (const auto& d : j.value("distractors", json::array())) {
      c.distractors.push_back({point_from(d.at("center")), d.at("radius").get<double>(),
                               d.value("intensity", 1.0)});
    }
    c.blur_sigma = j.value("blur_sigma", 1.0);
    c.noise_sigma = j.value("noise_sigma", 0.05);
    c.seed = j.value("seed", std::uint64_t{0});
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("phantom config: ") + e.what());
  }
}

}  // namespace spineneck
