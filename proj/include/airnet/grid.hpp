#pragma once

// Cubic-cell discretization of the airspace and its partition into zones.
//
// A continuous point p maps to the cell floor((p - anchor) / cell_size) on
// each axis. Zones are vertical columns with an N x N cell base; zone (a, b)
// covers N*a <= i < N*(a+1) and N*b <= j < N*(b+1).

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace airnet {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct CellCoord {
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t k = 0;

  friend auto operator<=>(const CellCoord&, const CellCoord&) = default;
};

struct ZoneCoord {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend auto operator<=>(const ZoneCoord&, const ZoneCoord&) = default;
};

/// Horizontal cell coordinates (i, j).
struct Column {
  std::int64_t i = 0;
  std::int64_t j = 0;

  friend auto operator<=>(const Column&, const Column&) = default;
};

struct GridConfig {
  Vec3 anchor;
  double cell_size = 5.0;
  int zone_side = 200;
  std::string crs_label = "custom";
  /// Highest modeled cell altitude; zones are unbounded upward in principle.
  int k_max = 200;

  /// Throws ConfigError when cell_size <= 0, zone_side < 3 or k_max < 0.
  void validate() const;
};

/// floor(a / b) for b > 0, exact for negative a.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

/// Throws std::invalid_argument on a non-finite coordinate.
CellCoord locate_cell(const Vec3& p, const GridConfig& cfg);

/// Continuous center of a cell.
Vec3 cell_center(const CellCoord& c, const GridConfig& cfg);

/// Order: +i, -i, +j, -j, +k, -k.
std::array<CellCoord, 6> cartesian_neighbors(const CellCoord& c);

ZoneCoord zone_of_cell(const CellCoord& c, const GridConfig& cfg);
ZoneCoord zone_of_column(const Column& c, int zone_side);

/// All N^2 columns of a zone, j-major then i.
std::vector<Column> zone_horizontal_cells(const ZoneCoord& z, const GridConfig& cfg);

/// Row-major zone ordering: by b, then a.
inline bool zone_row_major_less(const ZoneCoord& lhs, const ZoneCoord& rhs) {
  return std::pair(lhs.b, lhs.a) < std::pair(rhs.b, rhs.a);
}

/// Cell altitude of a continuous altitude above the anchor's datum.
std::int64_t altitude_to_k(double altitude_m, const GridConfig& cfg);

}  // namespace airnet

template <>
struct std::hash<airnet::CellCoord> {
  std::size_t operator()(const airnet::CellCoord& c) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(c.i) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(c.j) * 0xC2B2AE3D27D4EB4Full + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(c.k) * 0x165667B19E3779F9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};
