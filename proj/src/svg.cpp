#include "spineneck/svg.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "spineneck/raster_io.hpp"

namespace spineneck {

namespace {

void put_le(std::vector<unsigned char>& out, std::uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

// 24-bit bottom-up BMP of the grayscale image.
std::vector<unsigned char> grayscale_bmp(const ScalarField& image) {
  const int w = image.width();
  const int h = image.height();
  const int row = (3 * w + 3) / 4 * 4;
  const std::uint32_t data = static_cast<std::uint32_t>(row * h);
  std::vector<unsigned char> out;
  out.reserve(54 + data);
  out.push_back('B');
  out.push_back('M');
  put_le(out, 54 + data, 4);
  put_le(out, 0, 4);
  put_le(out, 54, 4);
  put_le(out, 40, 4);
  put_le(out, static_cast<std::uint32_t>(w), 4);
  put_le(out, static_cast<std::uint32_t>(h), 4);
  put_le(out, 1, 2);
  put_le(out, 24, 2);
  put_le(out, 0, 4);
  put_le(out, data, 4);
  put_le(out, 2835, 4);
  put_le(out, 2835, 4);
  put_le(out, 0, 4);
  put_le(out, 0, 4);

  double lo = 0.0, hi = 1.0;
  bool first = true;
  for (double v : image.values()) {
    if (!std::isfinite(v)) continue;
    lo = first ? v : std::min(lo, v);
    hi = first ? v : std::max(hi, v);
    first = false;
  }
  const double span = hi > lo ? hi - lo : 1.0;
  for (int y = h - 1; y >= 0; --y) {
    for (int x = 0; x < w; ++x) {
      const double v = image(x, y);
      const auto g = static_cast<unsigned char>(
          std::lround(255.0 * std::clamp(std::isfinite(v) ? (v - lo) / span : 0.0, 0.0, 1.0)));
      out.insert(out.end(), {g, g, g});
    }
    for (int p = 3 * w; p < row; ++p) out.push_back(0);
  }
  return out;
}

void polyline(std::ostringstream& svg, const std::vector<GridPoint>& pts, double scale,
              const char* style, bool closed) {
  if (pts.empty()) return;
  svg << "  <" << (closed ? "polygon" : "polyline") << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) svg << ' ';
    svg << io::format_real((pts[i].x + 0.5) * scale) << ','
        << io::format_real((pts[i].y + 0.5) * scale);
  }
  svg << "\" " << style << "/>\n";
}

}  // namespace

std::string base64_encode(const std::vector<unsigned char>& bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    std::uint32_t chunk = std::uint32_t(bytes[i]) << 16;
    if (i + 1 < bytes.size()) chunk |= std::uint32_t(bytes[i + 1]) << 8;
    if (i + 2 < bytes.size()) chunk |= bytes[i + 2];
    out.push_back(kAlphabet[(chunk >> 18) & 63]);
    out.push_back(kAlphabet[(chunk >> 12) & 63]);
    out.push_back(i + 1 < bytes.size() ? kAlphabet[(chunk >> 6) & 63] : '=');
    out.push_back(i + 2 < bytes.size() ? kAlphabet[chunk & 63] : '=');
  }
  return out;
}

std::string render_overlay(const OverlayLayers& layers, double scale) {
  int w = 0, h = 0;
  if (layers.image != nullptr) {
    w = layers.image->width();
    h = layers.image->height();
  }
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * scale << "\" height=\""
      << h * scale << "\" viewBox=\"0 0 " << w * scale << ' ' << h * scale << "\">\n";
  if (layers.image != nullptr) {
    svg << "  <image x=\"0\" y=\"0\" width=\"" << w * scale << "\" height=\"" << h * scale
        << "\" style=\"image-rendering:pixelated\" href=\"data:image/bmp;base64,"
        << base64_encode(grayscale_bmp(*layers.image)) << "\"/>\n";
  }
  for (const auto& c : layers.candidates) {
    polyline(svg, c, scale, "fill=\"none\" stroke=\"#ff40ff\" stroke-opacity=\"0.35\" stroke-width=\"1\"", false);
  }
  polyline(svg, layers.shaft_contour, scale, "fill=\"none\" stroke=\"cyan\" stroke-width=\"1.5\"", true);
  polyline(svg, layers.head_contour, scale, "fill=\"none\" stroke=\"white\" stroke-width=\"1.5\"", true);
  polyline(svg, layers.truth, scale,
           "fill=\"none\" stroke=\"white\" stroke-dasharray=\"4 3\" stroke-width=\"1.5\"", false);
  polyline(svg, layers.prediction, scale, "fill=\"none\" stroke=\"yellow\" stroke-width=\"2\"", false);
  for (const auto& p : layers.median_points) {
    svg << "  <circle cx=\"" << io::format_real((p.x + 0.5) * scale) << "\" cy=\""
        << io::format_real((p.y + 0.5) * scale) << "\" r=\"" << 0.5 * scale
        << "\" fill=\"orange\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace spineneck
