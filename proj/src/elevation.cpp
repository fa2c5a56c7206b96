#include "airnet/elevation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace airnet {

ElevationMap::ElevationMap(ZoneCoord zone, int side)
    : zone_(zone),
      side_(side),
      heights_(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), kUnboundedHeight) {
  if (side < 1) throw std::invalid_argument("ElevationMap: side must be positive");
}

bool ElevationMap::contains(const Column& c) const {
  const std::int64_t i0 = static_cast<std::int64_t>(side_) * zone_.a;
  const std::int64_t j0 = static_cast<std::int64_t>(side_) * zone_.b;
  return c.i >= i0 && c.i < i0 + side_ && c.j >= j0 && c.j < j0 + side_;
}

std::size_t ElevationMap::checked_index(const Column& c) const {
  if (!contains(c)) {
    throw std::out_of_range("column (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                            ") is outside zone (" + std::to_string(zone_.a) + "," + std::to_string(zone_.b) + ")");
  }
  return index(static_cast<int>(c.i - static_cast<std::int64_t>(side_) * zone_.a),
               static_cast<int>(c.j - static_cast<std::int64_t>(side_) * zone_.b));
}

std::int64_t ElevationMap::height(const Column& c) const { return heights_[checked_index(c)]; }

void ElevationMap::set_height(const Column& c, std::int64_t k) { heights_[checked_index(c)] = k; }

// ---------------------------------------------------------------------------

Slice::Slice(ZoneCoord zone, int side, std::int64_t k, std::vector<CellState> states)
    : zone_(zone), side_(side), k_(k), states_(std::move(states)) {
  if (side < 3) throw std::invalid_argument("Slice: side must be at least 3");
  if (states_.size() != static_cast<std::size_t>(side) * static_cast<std::size_t>(side)) {
    throw std::invalid_argument("Slice: state count does not match side*side");
  }
  labels_ = label_obstacles(side_, states_);

  perimeter_.reserve(static_cast<std::size_t>(4 * side_ - 4));
  for (int u = 0; u < side_; ++u) perimeter_.push_back(index(u, 0));
  for (int v = 1; v < side_; ++v) perimeter_.push_back(index(side_ - 1, v));
  for (int u = side_ - 2; u >= 0; --u) perimeter_.push_back(index(u, side_ - 1));
  for (int v = side_ - 2; v >= 1; --v) perimeter_.push_back(index(0, v));
}

bool Slice::contains(const Column& c) const {
  return c.i >= origin_i() && c.i < origin_i() + side_ && c.j >= origin_j() && c.j < origin_j() + side_;
}

std::size_t Slice::index_of(const Column& c) const {
  if (!contains(c)) throw std::out_of_range("column outside slice");
  return index(static_cast<int>(c.i - origin_i()), static_cast<int>(c.j - origin_j()));
}

bool Slice::is_boundary(std::size_t idx) const {
  const int u = u_of(idx);
  const int v = v_of(idx);
  return u == 0 || v == 0 || u == side_ - 1 || v == side_ - 1;
}

std::size_t Slice::full_count() const {
  return static_cast<std::size_t>(std::count(states_.begin(), states_.end(), CellState::full));
}

int Slice::perimeter_position(std::size_t idx) const {
  const int u = u_of(idx);
  const int v = v_of(idx);
  const int n = side_;
  if (v == 0) return u;
  if (u == n - 1) return (n - 1) + v;
  if (v == n - 1) return 2 * (n - 1) + (n - 1 - u);
  if (u == 0) return 3 * (n - 1) + (n - 1 - v);
  return -1;
}

int Slice::perimeter_distance(int p, int q) const {
  const int total = 4 * side_ - 4;
  const int d = std::abs(p - q) % total;
  return std::min(d, total - d);
}

// ---------------------------------------------------------------------------

ObstacleLabels label_obstacles(int side, const std::vector<CellState>& states) {
  ObstacleLabels labels;
  labels.id.assign(states.size(), -1);
  std::vector<std::size_t> stack;
  const auto n = static_cast<std::size_t>(side);

  for (std::size_t seed = 0; seed < states.size(); ++seed) {
    if (states[seed] != CellState::full || labels.id[seed] >= 0) continue;
    const int id = static_cast<int>(labels.count++);
    labels.id[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const std::size_t u = cur % n;
      const std::size_t v = cur / n;
      auto visit = [&](std::size_t next) {
        if (states[next] == CellState::full && labels.id[next] < 0) {
          labels.id[next] = id;
          stack.push_back(next);
        }
      };
      if (u + 1 < n) visit(cur + 1);
      if (u > 0) visit(cur - 1);
      if (v + 1 < n) visit(cur + n);
      if (v > 0) visit(cur - n);
    }
  }
  return labels;
}

ObstacleLabels label_obstacles(const Slice& s) { return label_obstacles(s.side(), s.states()); }

// ---------------------------------------------------------------------------

ElevationMap build_map_from_points(const PointSet& ps, const ZoneCoord& z, const GridConfig& cfg) {
  ElevationMap map(z, cfg.zone_side);
  const std::int64_t i0 = static_cast<std::int64_t>(cfg.zone_side) * z.a;
  const std::int64_t j0 = static_cast<std::int64_t>(cfg.zone_side) * z.b;
  const std::int64_t n = cfg.zone_side;

  std::vector<bool> seen(static_cast<std::size_t>(n * n), false);
  for (std::size_t p = 0; p < ps.points.size(); ++p) {
    const Vec3& pt = ps.points[p];
    if (!std::isfinite(pt.x) || !std::isfinite(pt.y) || !std::isfinite(pt.z)) {
      throw std::invalid_argument("non-finite coordinate in point " + std::to_string(p) + " of source '" +
                                  ps.source_id + "'");
    }
    const CellCoord c = locate_cell(pt, cfg);
    const std::int64_t u = c.i - i0;
    const std::int64_t v = c.j - j0;
    if (u < 0 || v < 0 || u >= n || v >= n) continue;
    const auto idx = static_cast<std::size_t>(v * n + u);
    const int ui = static_cast<int>(u);
    const int vi = static_cast<int>(v);
    if (!seen[idx]) {
      seen[idx] = true;
      map.set_height_local(ui, vi, c.k);
    } else {
      map.set_height_local(ui, vi, std::max(map.height_local(ui, vi), c.k));
    }
  }

  std::size_t clamped = 0;
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      if (map.height_local(u, v) < 0) {
        map.set_height_local(u, v, 0);
        ++clamped;
      }
    }
  }
  map.set_clamped_columns(clamped);
  return map;
}

std::vector<Slice> build_map_from_slices(const std::vector<ObstacleRaster>& rasters, const ZoneCoord& z,
                                         const GridConfig& cfg) {
  const auto cells = static_cast<std::size_t>(cfg.zone_side) * static_cast<std::size_t>(cfg.zone_side);
  std::set<std::int64_t> seen_k;
  std::vector<Slice> slices;
  slices.reserve(rasters.size());
  for (std::size_t r = 0; r < rasters.size(); ++r) {
    const ObstacleRaster& raster = rasters[r];
    if (raster.mask.size() != cells) {
      throw std::invalid_argument("raster " + std::to_string(r) + ": mask has " + std::to_string(raster.mask.size()) +
                                  " cells, expected " + std::to_string(cells));
    }
    const std::int64_t k = altitude_to_k(raster.altitude_m, cfg);
    if (!seen_k.insert(k).second) {
      throw std::invalid_argument("raster " + std::to_string(r) + ": cell altitude k=" + std::to_string(k) +
                                  " already provided by another raster");
    }
    std::vector<CellState> states(cells);
    std::transform(raster.mask.begin(), raster.mask.end(), states.begin(),
                   [](std::uint8_t m) { return m != 0 ? CellState::full : CellState::free; });
    slices.emplace_back(z, cfg.zone_side, k, std::move(states));
  }
  return slices;
}

CellState cell_type(const CellCoord& c, const ElevationMap& m) {
  return c.k <= m.height({c.i, c.j}) ? CellState::full : CellState::free;
}

Slice extract_slice(const ElevationMap& m, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("extract_slice: cell altitude below the anchor is not modeled");
  const int n = m.side();
  std::vector<CellState> states(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      states[static_cast<std::size_t>(v) * static_cast<std::size_t>(n) + static_cast<std::size_t>(u)] =
          k <= m.height_local(u, v) ? CellState::full : CellState::free;
    }
  }
  return Slice(m.zone(), n, k, std::move(states));
}

}  // namespace airnet
