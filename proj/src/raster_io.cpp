#include "spineneck/raster_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spineneck::io {

namespace {

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ifstream in(path, std::ios::in | mode);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | mode);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  return out;
}

// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string token;
  while (in) {
    const int c = in.get();
    if (c == EOF) break;
    if (c == '#') {
      std::string discard;
      std::getline(in, discard);
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

int parse_int(const std::string& token, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, path.string() + ": bad integer '" + token + "'");
  }
}

double parse_real(const std::string& token, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, path.string() + ": bad number '" + token + "'");
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  return cells;
}

}  // namespace

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // no negative zero in text
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

ScalarField read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  if (header_token(in) != "P5") {
    throw Error(ErrorCode::ParseError, path.string() + ": not a binary PGM (P5)");
  }
  const int width = parse_int(header_token(in), path);
  const int height = parse_int(header_token(in), path);
  const int maxval = parse_int(header_token(in), path);
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535) {
    throw Error(ErrorCode::ParseError, path.string() + ": invalid PGM header");
  }
  const std::size_t count = static_cast<std::size_t>(width) * height;
  const std::size_t bytes_per = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(count * bytes_per);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw Error(ErrorCode::ParseError, path.string() + ": truncated PGM raster");
  }
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = bytes_per == 2 ? double((raw[2 * i] << 8) | raw[2 * i + 1]) : double(raw[i]);
  }
  return ScalarField(width, height, std::move(values));
}

void write_pgm(const std::filesystem::path& path, const ScalarField& field, int maxval) {
  if (maxval != 255 && maxval != 65535) {
    throw Error(ErrorCode::BadParameter, "PGM maxval must be 255 or 65535");
  }
  auto out = open_out(path, std::ios::binary);
  out << "P5\n" << field.width() << ' ' << field.height() << '\n' << maxval << '\n';
  std::vector<unsigned char> raw;
  raw.reserve(field.size() * (maxval > 255 ? 2 : 1));
  for (double v : field.values()) {
    const double c = std::isfinite(v) ? std::clamp(v, 0.0, 1.0) : 0.0;
    const auto level = static_cast<unsigned>(std::lround(c * maxval));
    if (maxval > 255) raw.push_back(static_cast<unsigned char>(level >> 8));
    raw.push_back(static_cast<unsigned char>(level & 0xff));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

BinaryMask read_mask_pgm(const std::filesystem::path& path) {
  // Masks may be smaller than 3x3 in principle, so decode without ScalarField.
  auto in = open_in(path, std::ios::binary);
  if (header_token(in) != "P5") {
    throw Error(ErrorCode::ParseError, path.string() + ": not a binary PGM (P5)");
  }
  const int width = parse_int(header_token(in), path);
  const int height = parse_int(header_token(in), path);
  const int maxval = parse_int(header_token(in), path);
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535) {
    throw Error(ErrorCode::ParseError, path.string() + ": invalid PGM header");
  }
  const std::size_t count = static_cast<std::size_t>(width) * height;
  const std::size_t bytes_per = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(count * bytes_per);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw Error(ErrorCode::ParseError, path.string() + ": truncated PGM raster");
  }
  std::vector<std::uint8_t> bits(count);
  for (std::size_t i = 0; i < count; ++i) {
    bits[i] = bytes_per == 2 ? (raw[2 * i] | raw[2 * i + 1]) != 0 : raw[i] != 0;
  }
  return BinaryMask(width, height, std::move(bits));
}

void write_mask_pgm(const std::filesystem::path& path, const BinaryMask& mask) {
  auto out = open_out(path, std::ios::binary);
  out << "P5\n" << mask.width() << ' ' << mask.height() << "\n255\n";
  std::vector<unsigned char> raw(mask.bits().size());
  std::transform(mask.bits().begin(), mask.bits().end(), raw.begin(),
                 [](std::uint8_t b) { return b ? 255 : 0; });
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

ScalarField read_csv_field(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<double> values;
  int width = -1;
  int height = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (width < 0) width = static_cast<int>(cells.size());
    if (static_cast<int>(cells.size()) != width) {
      throw Error(ErrorCode::ParseError, path.string() + ": ragged CSV raster at row " +
                                             std::to_string(height));
    }
    for (const auto& c : cells) values.push_back(parse_real(c, path));
    ++height;
  }
  if (width <= 0) throw Error(ErrorCode::ParseError, path.string() + ": empty CSV raster");
  return ScalarField(width, height, std::move(values));
}

void write_csv_field(const std::filesystem::path& path, const ScalarField& field) {
  auto out = open_out(path);
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      if (x > 0) out << ',';
      const double v = field(x, y);
      out << (std::isfinite(v) ? format_real(v) : std::string(v > 0 ? "inf" : "nan"));
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

ScalarField read_image(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv") return read_csv_field(path);
  return read_pgm(path);
}

PointTable read_points_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  PointTable table;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (header) {
      if (cells.size() != 3 || cells[1] != "x" || cells[2] != "y") {
        throw Error(ErrorCode::ParseError,
                    path.string() + ": expected header 'index,x,y' or 'lambda,x,y'");
      }
      table.key_name = cells[0];
      header = false;
      continue;
    }
    if (cells.size() != 3) {
      throw Error(ErrorCode::ParseError, path.string() + ": expected 3 columns");
    }
    table.keys.push_back(parse_real(cells[0], path));
    table.points.push_back({parse_real(cells[1], path), parse_real(cells[2], path)});
  }
  if (header) throw Error(ErrorCode::ParseError, path.string() + ": missing header row");
  return table;
}

void write_points_csv(const std::filesystem::path& path, const std::string& key_name,
                      const std::vector<double>& keys, const std::vector<GridPoint>& points) {
  if (keys.size() != points.size()) {
    throw Error(ErrorCode::DimensionMismatch, "key and point counts differ");
  }
  auto out = open_out(path);
  out << key_name << ",x,y\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (key_name == "index") {
      out << static_cast<long long>(keys[i]);
    } else {
      out << format_real(keys[i]);
    }
    out << ',' << format_real(points[i].x) << ',' << format_real(points[i].y) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

void write_points_csv(const std::filesystem::path& path, const std::vector<GridPoint>& points) {
  std::vector<double> keys(points.size());
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = static_cast<double>(i);
  write_points_csv(path, "index", keys, points);
}

}  // namespace spineneck::io
