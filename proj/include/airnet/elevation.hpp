#pragma once

// Discrete elevation maps, fixed-altitude slices and obstacle labeling.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "airnet/grid.hpp"

namespace airnet {

enum class CellState : std::uint8_t { free, full };

/// Height of a column with no data: every cell of the column is full.
inline constexpr std::int64_t kUnboundedHeight = std::numeric_limits<std::int64_t>::max();

struct PointSet {
  std::vector<Vec3> points;
  std::string source_id;
};

/// Ground cell altitude for each of a zone's N x N columns.
class ElevationMap {
 public:
  /// All columns start unbounded.
  ElevationMap(ZoneCoord zone, int side);

  ZoneCoord zone() const { return zone_; }
  int side() const { return side_; }
  bool contains(const Column& c) const;

  /// Throws std::out_of_range for a column outside the zone.
  std::int64_t height(const Column& c) const;
  void set_height(const Column& c, std::int64_t k);

  std::int64_t height_local(int u, int v) const { return heights_[index(u, v)]; }
  void set_height_local(int u, int v, std::int64_t k) { heights_[index(u, v)] = k; }

  /// Columns whose negative ground altitude was clamped to 0 while building.
  std::size_t clamped_columns() const { return clamped_; }
  void set_clamped_columns(std::size_t n) { clamped_ = n; }

 private:
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(side_) + static_cast<std::size_t>(u);
  }
  std::size_t checked_index(const Column& c) const;

  ZoneCoord zone_;
  int side_;
  std::vector<std::int64_t> heights_;
  std::size_t clamped_ = 0;
};

/// Connected components of full cells under in-slice 4-adjacency.
struct ObstacleLabels {
  /// Per local cell; -1 for free cells.
  std::vector<int> id;
  std::size_t count = 0;
};

/// One zone's cells at a fixed cell altitude.
///
/// Local cell (u, v) is global column (N*a + u, N*b + v) and has linear
/// index v*N + u. Obstacles are labeled on construction.
class Slice {
 public:
  Slice(ZoneCoord zone, int side, std::int64_t k, std::vector<CellState> states);

  ZoneCoord zone() const { return zone_; }
  int side() const { return side_; }
  std::int64_t k() const { return k_; }
  std::size_t cell_count() const { return states_.size(); }

  std::int64_t origin_i() const { return static_cast<std::int64_t>(side_) * zone_.a; }
  std::int64_t origin_j() const { return static_cast<std::int64_t>(side_) * zone_.b; }

  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(side_) + static_cast<std::size_t>(u);
  }
  int u_of(std::size_t idx) const { return static_cast<int>(idx % static_cast<std::size_t>(side_)); }
  int v_of(std::size_t idx) const { return static_cast<int>(idx / static_cast<std::size_t>(side_)); }
  Column column(std::size_t idx) const { return {origin_i() + u_of(idx), origin_j() + v_of(idx)}; }
  CellCoord cell(std::size_t idx) const {
    const Column c = column(idx);
    return {c.i, c.j, k_};
  }

  bool contains(const Column& c) const;
  /// Throws std::out_of_range for a column outside the zone.
  std::size_t index_of(const Column& c) const;

  CellState state(std::size_t idx) const { return states_[idx]; }
  bool is_full(std::size_t idx) const { return states_[idx] == CellState::full; }
  bool is_boundary(std::size_t idx) const;
  const std::vector<CellState>& states() const { return states_; }

  int obstacle_id(std::size_t idx) const { return labels_.id[idx]; }
  std::size_t obstacle_count() const { return labels_.count; }
  const ObstacleLabels& obstacles() const { return labels_; }
  std::size_t full_count() const;

  /// Boundary cells counterclockwise from local (0, 0): south edge, east,
  /// north, then west.
  const std::vector<std::size_t>& perimeter() const { return perimeter_; }
  /// Position of a boundary cell in perimeter(); -1 for interior cells.
  int perimeter_position(std::size_t idx) const;
  /// Arc distance in cells between two perimeter positions.
  int perimeter_distance(int p, int q) const;

 private:
  ZoneCoord zone_;
  int side_;
  std::int64_t k_;
  std::vector<CellState> states_;
  ObstacleLabels labels_;
  std::vector<std::size_t> perimeter_;
};

/// Labels full cells; ids are dense and follow the linear order of each
/// component's first cell.
ObstacleLabels label_obstacles(int side, const std::vector<CellState>& states);
ObstacleLabels label_obstacles(const Slice& s);

/// Highest cell altitude per column over all points mapping into the zone;
/// columns without points stay unbounded. Negative heights clamp to 0.
/// Throws std::invalid_argument naming the source on non-finite points.
ElevationMap build_map_from_points(const PointSet& ps, const ZoneCoord& z, const GridConfig& cfg);

struct ObstacleRaster {
  double altitude_m = 0.0;
  /// N*N entries indexed v*N + u; nonzero is full.
  std::vector<std::uint8_t> mask;
};

/// One slice per raster, taken directly from the masks. Throws
/// std::invalid_argument on a mask of the wrong size or a repeated k.
std::vector<Slice> build_map_from_slices(const std::vector<ObstacleRaster>& rasters, const ZoneCoord& z,
                                         const GridConfig& cfg);

/// Throws std::out_of_range when the column lies outside the map's zone.
CellState cell_type(const CellCoord& c, const ElevationMap& m);

/// Throws std::invalid_argument for k < 0.
Slice extract_slice(const ElevationMap& m, std::int64_t k);

}  // namespace airnet
