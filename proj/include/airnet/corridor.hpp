#pragma once

// Corridors: chains of free cells grown along streamlines of a solved slice.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "airnet/elevation.hpp"
#include "airnet/grid.hpp"
#include "airnet/streamfield.hpp"

namespace airnet {

enum class Orientation : std::uint8_t { none, forward, backward };

const char* to_string(Orientation o);

/// Sign of d' . n_in, where n_in sums the inward normals of the cell's
/// perimeter faces. Throws std::invalid_argument for interior cells.
Orientation classify_orientation(const Slice& s, std::size_t idx, const LayerSpec& layer);
Orientation classify_orientation(const Slice& s, const Column& c, const LayerSpec& layer);

struct Corridor {
  int layer = 0;
  ZoneCoord zone;
  /// Start cell first.
  std::vector<CellCoord> cells;
  /// +d' for forward starts, -d' for backward starts.
  Vec2 growth;
  Orientation start_orientation = Orientation::none;

  const CellCoord& front() const { return cells.front(); }
  const CellCoord& back() const { return cells.back(); }
};

enum class GrowthFailureCause : std::uint8_t { dead_end, collision };

struct GrowthFailure {
  /// Dead end: the last cell reached. Collision: the reserved cell picked.
  Column cell;
  GrowthFailureCause cause = GrowthFailureCause::dead_end;
};

using GrowthResult = std::variant<Corridor, GrowthFailure>;

struct CorridorOptions {
  /// |psi - psi_start| differences within this are ties, broken by larger
  /// progress and then by neighbor order +i, -i, +j, -j.
  double psi_tie_tolerance = 1e-9;
};

/// Cells taken by committed corridors of one slice, per local cell.
using Reservation = std::vector<std::uint8_t>;

/// Grows one corridor from a free, oriented, unreserved boundary cell.
/// Growth ends successfully on a boundary cell with the opposite
/// orientation. `reserved` is never modified. Throws std::invalid_argument
/// when the start violates its preconditions.
GrowthResult grow_corridor(std::size_t start, const Slice& s, const PsiField& psi, const LayerSpec& layer,
                           const Reservation& reserved, const CorridorOptions& options = {});

/// Boundary cell whose out-of-zone neighbor is an endpoint of a corridor
/// committed in a neighboring zone at the same layer.
struct StartHint {
  ZoneCoord from_zone;
  Column cell;
};

struct LayerCorridors {
  std::vector<Corridor> corridors;
  std::size_t attempts = 0;
  std::size_t dead_ends = 0;
  std::size_t collisions = 0;
  std::size_t hinted_successes = 0;
};

/// Tries hinted starts first (by neighbor zone, then perimeter position),
/// then every other oriented free boundary cell in perimeter order. A start
/// closer than n_r perimeter cells to an endpoint of an already committed
/// corridor is skipped.
LayerCorridors generate_layer(const Slice& s, const PsiField& psi, const LayerSpec& layer, int n_r,
                              const std::vector<StartHint>& hints, const CorridorOptions& options = {});

struct VerticalConnection {
  Column column;
  int lower_layer = 0;
  int upper_layer = 0;
  std::int64_t k_lower = 0;
  std::int64_t k_upper = 0;

  /// Cells (i, j, k_lower) .. (i, j, k_upper).
  std::vector<CellCoord> chain() const;
};

using FullCellPredicate = std::function<bool(const CellCoord&)>;

/// A connection for every column holding a corridor cell in both layers
/// whose cells strictly between k_lower and k_upper are all free. Sorted by
/// (j, i).
std::vector<VerticalConnection> vertical_connections(const std::vector<Corridor>& lower,
                                                     const std::vector<Corridor>& upper,
                                                     const FullCellPredicate& is_full, std::int64_t k_lower,
                                                     std::int64_t k_upper, int lower_layer, int upper_layer);

std::vector<VerticalConnection> vertical_connections(const std::vector<Corridor>& lower,
                                                     const std::vector<Corridor>& upper, const ElevationMap& map,
                                                     std::int64_t k_lower, std::int64_t k_upper, int lower_layer,
                                                     int upper_layer);

}  // namespace airnet
