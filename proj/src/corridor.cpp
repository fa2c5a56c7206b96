#include "airnet/corridor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace airnet {

namespace {

constexpr double kOrientationEpsilon = 1e-12;

Orientation opposite(Orientation o) {
  switch (o) {
    case Orientation::forward:
      return Orientation::backward;
    case Orientation::backward:
      return Orientation::forward;
    case Orientation::none:
      break;
  }
  return Orientation::none;
}

struct Step {
  int du;
  int dv;
};

// Neighbor order used for tie-breaking.
constexpr Step kSteps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

}  // namespace

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::forward:
      return "forward";
    case Orientation::backward:
      return "backward";
    case Orientation::none:
      break;
  }
  return "none";
}

Orientation classify_orientation(const Slice& s, std::size_t idx, const LayerSpec& layer) {
  if (!s.is_boundary(idx)) throw std::invalid_argument("classify_orientation: not a boundary cell");
  const int u = s.u_of(idx);
  const int v = s.v_of(idx);
  const int last = s.side() - 1;
  Vec2 inward;
  if (u == 0) inward.x += 1.0;
  if (u == last) inward.x -= 1.0;
  if (v == 0) inward.y += 1.0;
  if (v == last) inward.y -= 1.0;
  const double along = layer.direction.x * inward.x + layer.direction.y * inward.y;
  if (along > kOrientationEpsilon) return Orientation::forward;
  if (along < -kOrientationEpsilon) return Orientation::backward;
  return Orientation::none;
}

Orientation classify_orientation(const Slice& s, const Column& c, const LayerSpec& layer) {
  return classify_orientation(s, s.index_of(c), layer);
}

GrowthResult grow_corridor(std::size_t start, const Slice& s, const PsiField& psi, const LayerSpec& layer,
                           const Reservation& reserved, const CorridorOptions& options) {
  if (!s.is_boundary(start)) throw std::invalid_argument("grow_corridor: start is not a boundary cell");
  if (s.is_full(start)) throw std::invalid_argument("grow_corridor: start cell is full");
  if (reserved[start]) throw std::invalid_argument("grow_corridor: start cell is reserved");
  const Orientation start_orientation = classify_orientation(s, start, layer);
  if (start_orientation == Orientation::none) throw std::invalid_argument("grow_corridor: start has no orientation");

  const Orientation goal = opposite(start_orientation);
  const double sign = start_orientation == Orientation::forward ? 1.0 : -1.0;
  const Vec2 growth{sign * layer.direction.x, sign * layer.direction.y};
  const double origin_psi = psi.psi[start];
  const int n = s.side();

  std::vector<std::uint8_t> in_corridor(s.cell_count(), 0);
  std::vector<std::size_t> chain{start};
  in_corridor[start] = 1;
  std::size_t last = start;

  while (last == start || !s.is_boundary(last) || classify_orientation(s, last, layer) != goal) {
    struct Candidate {
      std::size_t idx;
      double distance;
      double progress;
    };
    Candidate options_at[4];
    int count = 0;
    const int u = s.u_of(last);
    const int v = s.v_of(last);
    for (const Step& step : kSteps) {
      const int nu = u + step.du;
      const int nv = v + step.dv;
      if (nu < 0 || nv < 0 || nu >= n || nv >= n) continue;
      const std::size_t nb = s.index(nu, nv);
      if (s.is_full(nb) || in_corridor[nb] || !psi.reachable[nb]) continue;
      // Progress changes by exactly one component of the growth direction.
      const double progress = step.du * growth.x + step.dv * growth.y;
      if (progress < 0.0) continue;
      options_at[count++] = {nb, std::abs(psi.psi[nb] - origin_psi), progress};
    }
    if (count == 0) return GrowthFailure{s.column(last), GrowthFailureCause::dead_end};

    double closest = std::numeric_limits<double>::infinity();
    for (int c = 0; c < count; ++c) closest = std::min(closest, options_at[c].distance);
    int pick = -1;
    for (int c = 0; c < count; ++c) {
      if (options_at[c].distance > closest + options.psi_tie_tolerance) continue;
      if (pick < 0 || options_at[c].progress > options_at[pick].progress) pick = c;
    }
    const std::size_t next = options_at[pick].idx;
    if (reserved[next]) return GrowthFailure{s.column(next), GrowthFailureCause::collision};

    in_corridor[next] = 1;
    chain.push_back(next);
    last = next;
  }

  Corridor corridor;
  corridor.layer = layer.index;
  corridor.zone = s.zone();
  corridor.growth = growth;
  corridor.start_orientation = start_orientation;
  corridor.cells.reserve(chain.size());
  for (const std::size_t idx : chain) corridor.cells.push_back(s.cell(idx));
  return corridor;
}

LayerCorridors generate_layer(const Slice& s, const PsiField& psi, const LayerSpec& layer, int n_r,
                              const std::vector<StartHint>& hints, const CorridorOptions& options) {
  if (n_r < 1) throw std::invalid_argument("generate_layer: n_r must be at least 1");

  std::vector<StartHint> ordered;
  for (const StartHint& h : hints) {
    if (s.contains(h.cell) && s.is_boundary(s.index_of(h.cell))) ordered.push_back(h);
  }
  std::stable_sort(ordered.begin(), ordered.end(), [&](const StartHint& lhs, const StartHint& rhs) {
    if (lhs.from_zone != rhs.from_zone) return zone_row_major_less(lhs.from_zone, rhs.from_zone);
    return s.perimeter_position(s.index_of(lhs.cell)) < s.perimeter_position(s.index_of(rhs.cell));
  });

  std::vector<std::size_t> order;
  std::vector<std::uint8_t> queued(s.cell_count(), 0);
  std::vector<std::uint8_t> hinted(s.cell_count(), 0);
  for (const StartHint& h : ordered) {
    const std::size_t idx = s.index_of(h.cell);
    if (queued[idx]) continue;
    queued[idx] = hinted[idx] = 1;
    order.push_back(idx);
  }
  for (const std::size_t idx : s.perimeter()) {
    if (!queued[idx]) {
      queued[idx] = 1;
      order.push_back(idx);
    }
  }

  LayerCorridors out;
  Reservation reserved(s.cell_count(), 0);
  std::vector<int> endpoints;
  for (const std::size_t idx : order) {
    if (s.is_full(idx) || reserved[idx] || !psi.reachable[idx]) continue;
    if (classify_orientation(s, idx, layer) == Orientation::none) continue;
    const int pos = s.perimeter_position(idx);
    const bool crowded = std::any_of(endpoints.begin(), endpoints.end(),
                                     [&](int q) { return s.perimeter_distance(pos, q) < n_r; });
    if (crowded) continue;

    ++out.attempts;
    GrowthResult result = grow_corridor(idx, s, psi, layer, reserved, options);
    if (auto* failure = std::get_if<GrowthFailure>(&result)) {
      ++(failure->cause == GrowthFailureCause::dead_end ? out.dead_ends : out.collisions);
      continue;
    }
    auto& corridor = std::get<Corridor>(result);
    for (const CellCoord& c : corridor.cells) reserved[s.index_of({c.i, c.j})] = 1;
    endpoints.push_back(pos);
    endpoints.push_back(s.perimeter_position(s.index_of({corridor.back().i, corridor.back().j})));
    if (hinted[idx]) ++out.hinted_successes;
    out.corridors.push_back(std::move(corridor));
  }
  return out;
}

std::vector<CellCoord> VerticalConnection::chain() const {
  std::vector<CellCoord> cells;
  cells.reserve(static_cast<std::size_t>(k_upper - k_lower + 1));
  for (std::int64_t k = k_lower; k <= k_upper; ++k) cells.push_back({column.i, column.j, k});
  return cells;
}

std::vector<VerticalConnection> vertical_connections(const std::vector<Corridor>& lower,
                                                     const std::vector<Corridor>& upper,
                                                     const FullCellPredicate& is_full, std::int64_t k_lower,
                                                     std::int64_t k_upper, int lower_layer, int upper_layer) {
  if (k_lower >= k_upper) throw std::invalid_argument("vertical_connections: k_lower must be below k_upper");
  auto row_major = [](const Column& lhs, const Column& rhs) { return std::pair(lhs.j, lhs.i) < std::pair(rhs.j, rhs.i); };
  std::set<Column, decltype(row_major)> lower_columns(row_major);
  for (const Corridor& c : lower) {
    for (const CellCoord& cell : c.cells) lower_columns.insert({cell.i, cell.j});
  }
  std::set<Column, decltype(row_major)> shared(row_major);
  for (const Corridor& c : upper) {
    for (const CellCoord& cell : c.cells) {
      if (lower_columns.count({cell.i, cell.j}) != 0) shared.insert({cell.i, cell.j});
    }
  }

  std::vector<VerticalConnection> out;
  for (const Column& col : shared) {
    bool clear = true;
    for (std::int64_t k = k_lower + 1; k < k_upper && clear; ++k) clear = !is_full({col.i, col.j, k});
    if (clear) out.push_back({col, lower_layer, upper_layer, k_lower, k_upper});
  }
  return out;
}

std::vector<VerticalConnection> vertical_connections(const std::vector<Corridor>& lower,
                                                     const std::vector<Corridor>& upper, const ElevationMap& map,
                                                     std::int64_t k_lower, std::int64_t k_upper, int lower_layer,
                                                     int upper_layer) {
  return vertical_connections(
      lower, upper, [&map](const CellCoord& c) { return cell_type(c, map) == CellState::full; }, k_lower, k_upper,
      lower_layer, upper_layer);
}

}  // namespace airnet
