#include "airnet/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "airnet/error.hpp"

namespace airnet {

void GridConfig::validate() const {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw ConfigError("cell_size must be a positive finite number of meters");
  }
  if (zone_side < 3) {
    throw ConfigError("zone_side must be at least 3 cells");
  }
  if (k_max < 0) {
    throw ConfigError("k_max must be non-negative");
  }
  if (!std::isfinite(anchor.x) || !std::isfinite(anchor.y) || !std::isfinite(anchor.z)) {
    throw ConfigError("anchor coordinates must be finite");
  }
}

namespace {

std::int64_t floor_to_index(double offset, double cell_size) {
  const double q = std::floor(offset / cell_size);
  if (!std::isfinite(q) || std::abs(q) > 9.0e15) {
    throw std::invalid_argument("coordinate out of representable cell range");
  }
  return static_cast<std::int64_t>(q);
}

}  // namespace

CellCoord locate_cell(const Vec3& p, const GridConfig& cfg) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw std::invalid_argument("locate_cell: non-finite coordinate");
  }
  return {floor_to_index(p.x - cfg.anchor.x, cfg.cell_size),
          floor_to_index(p.y - cfg.anchor.y, cfg.cell_size),
          floor_to_index(p.z - cfg.anchor.z, cfg.cell_size)};
}

Vec3 cell_center(const CellCoord& c, const GridConfig& cfg) {
  return {cfg.anchor.x + (static_cast<double>(c.i) + 0.5) * cfg.cell_size,
          cfg.anchor.y + (static_cast<double>(c.j) + 0.5) * cfg.cell_size,
          cfg.anchor.z + (static_cast<double>(c.k) + 0.5) * cfg.cell_size};
}

std::array<CellCoord, 6> cartesian_neighbors(const CellCoord& c) {
  return {{{c.i + 1, c.j, c.k},
           {c.i - 1, c.j, c.k},
           {c.i, c.j + 1, c.k},
           {c.i, c.j - 1, c.k},
           {c.i, c.j, c.k + 1},
           {c.i, c.j, c.k - 1}}};
}

ZoneCoord zone_of_column(const Column& c, int zone_side) {
  return {floor_div(c.i, zone_side), floor_div(c.j, zone_side)};
}

ZoneCoord zone_of_cell(const CellCoord& c, const GridConfig& cfg) {
  return zone_of_column({c.i, c.j}, cfg.zone_side);
}

std::vector<Column> zone_horizontal_cells(const ZoneCoord& z, const GridConfig& cfg) {
  const std::int64_t n = cfg.zone_side;
  std::vector<Column> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (std::int64_t j = n * z.b; j < n * (z.b + 1); ++j) {
    for (std::int64_t i = n * z.a; i < n * (z.a + 1); ++i) {
      out.push_back({i, j});
    }
  }
  return out;
}

std::int64_t altitude_to_k(double altitude_m, const GridConfig& cfg) {
  if (!std::isfinite(altitude_m)) {
    throw std::invalid_argument("altitude_to_k: non-finite altitude");
  }
  return floor_to_index(altitude_m - cfg.anchor.z, cfg.cell_size);
}

}  // namespace airnet
