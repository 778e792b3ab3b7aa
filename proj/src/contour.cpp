#include "spineneck/contour.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace spineneck {

namespace {

// Cell edges: 0 top, 1 right, 2 bottom, 3 left.
struct Segment {
  std::uint64_t a;
  std::uint64_t b;
};

}  // namespace

std::vector<Contour> iso_contours(const ScalarField& f, double level) {
  const int w = f.width();
  const int h = f.height();
  auto hkey = [w](int x, int y) { return 2 * (std::uint64_t(y) * std::uint64_t(w) + x); };
  auto vkey = [w](int x, int y) { return 2 * (std::uint64_t(y) * std::uint64_t(w) + x) + 1; };

  auto edge_point = [&](std::uint64_t key) -> GridPoint {
    const std::uint64_t idx = key / 2;
    const int x = static_cast<int>(idx % std::uint64_t(w));
    const int y = static_cast<int>(idx / std::uint64_t(w));
    const double a = f(x, y);
    const double b = (key & 1) ? f(x, y + 1) : f(x + 1, y);
    const double t = (b == a) ? 0.5 : (level - a) / (b - a);
    return (key & 1) ? GridPoint{double(x), y + t} : GridPoint{x + t, double(y)};
  };

  std::vector<Segment> segments;
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      const std::array<double, 4> c = {f(x, y), f(x + 1, y), f(x + 1, y + 1), f(x, y + 1)};
      int code = 0;
      for (int k = 0; k < 4; ++k) code |= (c[k] >= level ? 1 : 0) << k;
      if (code == 0 || code == 15) continue;
      const std::array<std::uint64_t, 4> e = {hkey(x, y), vkey(x + 1, y), hkey(x, y + 1),
                                              vkey(x, y)};
      auto add = [&](int i, int j) { segments.push_back({e[i], e[j]}); };
      const bool center_above = 0.25 * (c[0] + c[1] + c[2] + c[3]) >= level;
      switch (code) {
        case 1: add(3, 0); break;
        case 2: add(0, 1); break;
        case 3: add(3, 1); break;
        case 4: add(1, 2); break;
        case 5:
          if (center_above) { add(0, 1); add(2, 3); } else { add(3, 0); add(1, 2); }
          break;
        case 6: add(0, 2); break;
        case 7: add(3, 2); break;
        case 8: add(2, 3); break;
        case 9: add(0, 2); break;
        case 10:
          if (center_above) { add(3, 0); add(1, 2); } else { add(0, 1); add(2, 3); }
          break;
        case 11: add(1, 2); break;
        case 12: add(3, 1); break;
        case 13: add(0, 1); break;
        case 14: add(3, 0); break;
        default: break;
      }
    }
  }

  std::unordered_map<std::uint64_t, std::array<int, 2>> incident;
  incident.reserve(segments.size() * 2);
  auto attach = [&](std::uint64_t key, int s) {
    auto [it, fresh] = incident.try_emplace(key, std::array<int, 2>{-1, -1});
    (it->second[0] < 0 ? it->second[0] : it->second[1]) = s;
  };
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    attach(segments[s].a, s);
    attach(segments[s].b, s);
  }
  auto degree = [&](std::uint64_t key) {
    const auto& v = incident.at(key);
    return (v[0] >= 0 ? 1 : 0) + (v[1] >= 0 ? 1 : 0);
  };

  std::vector<char> used(segments.size(), 0);
  std::vector<Contour> contours;

  auto walk = [&](int first, std::uint64_t start_edge) {
    Contour c;
    auto push = [&](GridPoint p) {
      if (!c.vertices.empty() && distance(c.vertices.back(), p) < 1e-12) return;
      c.vertices.push_back(p);
    };
    push(edge_point(start_edge));
    std::uint64_t edge = start_edge;
    int seg = first;
    while (seg >= 0 && !used[seg]) {
      used[seg] = 1;
      edge = segments[seg].a == edge ? segments[seg].b : segments[seg].a;
      const auto& inc = incident.at(edge);
      const int next = inc[0] == seg ? inc[1] : inc[0];
      if (edge == start_edge) {
        c.closed = true;
        break;
      }
      push(edge_point(edge));
      seg = next;
    }
    if (c.closed && c.vertices.size() > 1 && distance(c.vertices.front(), c.vertices.back()) < 1e-12) {
      c.vertices.pop_back();
    }
    c.arc.assign(c.vertices.size(), 0.0);
    for (std::size_t i = 1; i < c.vertices.size(); ++i) {
      c.arc[i] = c.arc[i - 1] + distance(c.vertices[i - 1], c.vertices[i]);
    }
    c.length = c.arc.empty() ? 0.0 : c.arc.back();
    if (c.closed && c.vertices.size() > 1) {
      c.length += distance(c.vertices.back(), c.vertices.front());
    }
    contours.push_back(std::move(c));
  };

  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (used[s]) continue;
    if (degree(segments[s].a) == 1) {
      walk(s, segments[s].a);
    } else if (degree(segments[s].b) == 1) {
      walk(s, segments[s].b);
    }
  }
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (!used[s]) walk(s, segments[s].a);
  }
  return contours;
}

std::size_t nearest_vertex(const Contour& contour, GridPoint p) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < contour.vertices.size(); ++i) {
    const double d = distance(contour.vertices[i], p);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace spineneck
