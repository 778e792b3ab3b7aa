#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spineneck/raster.hpp"

namespace spineneck::io {

// Binary PGM (P5), maxval up to 65535. Values are returned as raw gray levels.
ScalarField read_pgm(const std::filesystem::path& path);
// Writes values clamped to [0,1] scaled to maxval (255 or 65535).
void write_pgm(const std::filesystem::path& path, const ScalarField& field, int maxval = 65535);

// Masks use PGM with nonzero = true.
BinaryMask read_mask_pgm(const std::filesystem::path& path);
void write_mask_pgm(const std::filesystem::path& path, const BinaryMask& mask);

// Comma-separated raster, one image row per line.
ScalarField read_csv_field(const std::filesystem::path& path);
void write_csv_field(const std::filesystem::path& path, const ScalarField& field);

// Grayscale image from either format, chosen by extension (.pgm or .csv).
ScalarField read_image(const std::filesystem::path& path);

// Point lists with a header row whose last two columns are x,y
// ("index,x,y" or "lambda,x,y"). The first column is returned in `keys`.
struct PointTable {
  std::string key_name;
  std::vector<double> keys;
  std::vector<GridPoint> points;
};

PointTable read_points_csv(const std::filesystem::path& path);
void write_points_csv(const std::filesystem::path& path, const std::string& key_name,
                      const std::vector<double>& keys, const std::vector<GridPoint>& points);
// Convenience form writing an "index,x,y" table.
void write_points_csv(const std::filesystem::path& path, const std::vector<GridPoint>& points);

// Fixed-precision decimal formatting used for every text output.
std::string format_real(double value);

}  // namespace spineneck::io
