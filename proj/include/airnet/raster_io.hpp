#pragma once

// PGM images and per-altitude obstacle raster sidecars.
//
// Image row 0 is the zone's northern edge: pixel (col, row) covers local
// cell (u, v) = (col, N - 1 - row).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "airnet/elevation.hpp"

namespace airnet {

struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  /// Row-major, row 0 first.
  std::vector<std::uint16_t> pixels;

  std::uint16_t at(int col, int row) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

/// Reads P2 (ASCII) and P5 (binary, 8 or 16 bit) images. Throws IoError.
PgmImage read_pgm(std::istream& in, const std::string& source);
PgmImage read_pgm(const std::filesystem::path& path);

/// Writes a binary P5 image.
void write_pgm(std::ostream& out, const PgmImage& image);
void write_pgm(const std::filesystem::path& path, const PgmImage& image);

/// Converts an N x N image into an obstacle mask (nonzero = full).
std::vector<std::uint8_t> mask_from_pgm(const PgmImage& image, int side);

/// Loads a sidecar JSON array of {"file", "altitude_m"} entries; files are
/// resolved relative to the sidecar's directory.
std::vector<ObstacleRaster> load_raster_sidecar(const std::filesystem::path& sidecar, int side);

}  // namespace airnet
