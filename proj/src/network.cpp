#include "airnet/network.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>

#include "airnet/error.hpp"

namespace airnet {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string zone_label(const ZoneCoord& z) {
  return "(" + std::to_string(z.a) + "," + std::to_string(z.b) + ")";
}

constexpr int kPlaneSteps[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

// A seam counts for an endpoint only when the layer direction crosses it.
constexpr double kCrossingEpsilon = 1e-12;

}  // namespace

void NetworkConfig::validate() const {
  grid.validate();
  if (layers.empty()) throw ConfigError("at least one layer is required");
  if (n_r < 1) throw ConfigError("n_r must be at least 1");
  if (!(solver.tol > 0.0)) throw ConfigError("solver tolerance must be positive");
  std::set<std::int64_t> ks;
  for (std::size_t n = 0; n < layers.size(); ++n) {
    const LayerSpec& layer = layers[n];
    if (layer.index != static_cast<int>(n)) {
      throw ConfigError("layer " + std::to_string(n) + ": index field must equal its position");
    }
    layer.validate();
    if (n > 0 && !(layer.altitude_m > layers[n - 1].altitude_m)) {
      throw ConfigError("layer " + std::to_string(n) + ": altitudes must be strictly increasing");
    }
    const std::int64_t k = altitude_to_k(layer.altitude_m, grid);
    if (k < 0 || k > grid.k_max) {
      throw ConfigError("layer " + std::to_string(n) + ": cell altitude " + std::to_string(k) + " outside [0, " +
                        std::to_string(grid.k_max) + "]");
    }
    if (!ks.insert(k).second) {
      throw ConfigError("layer " + std::to_string(n) + ": shares cell altitude " + std::to_string(k) +
                        " with a lower layer");
    }
  }
  std::set<ZoneCoord> seen;
  for (const ZoneCoord& z : zones) {
    if (!seen.insert(z).second) throw ConfigError("zone " + zone_label(z) + " listed twice");
  }
}

std::int64_t NetworkConfig::layer_k(std::size_t layer) const { return altitude_to_k(layers.at(layer).altitude_m, grid); }

// ---------------------------------------------------------------------------

ZoneSource ZoneSource::from_map(ElevationMap map) {
  ZoneSource src;
  src.map_ = std::move(map);
  return src;
}

ZoneSource ZoneSource::from_slices(std::vector<Slice> slices) {
  ZoneSource src;
  for (Slice& s : slices) {
    const std::int64_t k = s.k();
    src.slices_.emplace(k, std::move(s));
  }
  return src;
}

bool ZoneSource::has_slice(std::int64_t k) const { return map_.has_value() || slices_.count(k) != 0; }

Slice ZoneSource::slice_at(std::int64_t k) const {
  if (map_) return extract_slice(*map_, k);
  const auto it = slices_.find(k);
  if (it == slices_.end()) throw ConfigError("no obstacle raster at cell altitude " + std::to_string(k));
  return it->second;
}

bool ZoneSource::is_full(const CellCoord& c) const {
  if (map_) return cell_type(c, *map_) == CellState::full;
  const auto it = slices_.find(c.k);
  if (it == slices_.end()) return false;
  return it->second.is_full(it->second.index_of({c.i, c.j}));
}

const ZoneNetwork* AirNetwork::find_zone(const ZoneCoord& z) const {
  for (const ZoneNetwork& zn : zones) {
    if (zn.zone == z) return &zn;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

std::vector<StartHint> collect_hints(const std::vector<ZoneNetwork>& committed, const ZoneCoord& z, int layer,
                                     int zone_side) {
  std::vector<StartHint> hints;
  for (const ZoneNetwork& zn : committed) {
    const std::int64_t da = zn.zone.a - z.a;
    const std::int64_t db = zn.zone.b - z.b;
    if (std::abs(da) + std::abs(db) != 1) continue;
    for (const LayerNetwork& ln : zn.layers) {
      if (ln.layer != layer) continue;
      for (const Corridor& c : ln.corridors) {
        for (const CellCoord* end : {&c.front(), &c.back()}) {
          for (const auto& step : kPlaneSteps) {
            const Column nb{end->i + step[0], end->j + step[1]};
            if (zone_of_column(nb, zone_side) == z) hints.push_back({zn.zone, nb});
          }
        }
      }
    }
  }
  return hints;
}

std::vector<InterZoneLink> compute_links(const std::vector<ZoneNetwork>& zones, int zone_side) {
  std::unordered_map<CellCoord, int> endpoint_layer;
  for (const ZoneNetwork& zn : zones) {
    for (const LayerNetwork& ln : zn.layers) {
      for (const Corridor& c : ln.corridors) {
        endpoint_layer.emplace(c.front(), ln.layer);
        endpoint_layer.emplace(c.back(), ln.layer);
      }
    }
  }
  std::set<std::pair<CellCoord, CellCoord>> pairs;
  std::vector<InterZoneLink> links;
  for (const auto& [cell, layer] : endpoint_layer) {
    const ZoneCoord own = zone_of_column({cell.i, cell.j}, zone_side);
    for (const auto& step : kPlaneSteps) {
      const CellCoord nb{cell.i + step[0], cell.j + step[1], cell.k};
      if (zone_of_column({nb.i, nb.j}, zone_side) == own) continue;
      const auto it = endpoint_layer.find(nb);
      if (it == endpoint_layer.end() || it->second != layer) continue;
      const auto key = std::minmax(cell, nb);
      if (pairs.insert({key.first, key.second}).second) links.push_back({layer, key.first, key.second});
    }
  }
  std::sort(links.begin(), links.end(), [](const InterZoneLink& lhs, const InterZoneLink& rhs) {
    return std::tie(lhs.layer, lhs.first, lhs.second) < std::tie(rhs.layer, rhs.first, rhs.second);
  });
  return links;
}

AirNetwork generate(const NetworkConfig& cfg, const ZoneSources& sources) {
  cfg.validate();
  const int side = cfg.grid.zone_side;
  for (const ZoneCoord& z : cfg.zones) {
    const auto it = sources.find(z);
    if (it == sources.end()) throw ConfigError("zone " + zone_label(z) + " has no elevation source");
    if (it->second.has_map() && (it->second.map().zone() != z || it->second.map().side() != side)) {
      throw ConfigError("zone " + zone_label(z) + ": elevation map does not cover the zone");
    }
    for (std::size_t n = 0; n < cfg.layers.size(); ++n) {
      if (!it->second.has_slice(cfg.layer_k(n))) {
        throw ConfigError("zone " + zone_label(z) + ": no obstacle raster for layer " + std::to_string(n) +
                          " (cell altitude " + std::to_string(cfg.layer_k(n)) + ")");
      }
    }
  }

  const auto started = Clock::now();
  AirNetwork net;
  net.config = cfg;
  std::vector<ZoneCoord> order = cfg.zones;
  std::sort(order.begin(), order.end(), zone_row_major_less);

  for (const ZoneCoord& z : order) {
    const ZoneSource& source = sources.at(z);
    const auto zone_started = Clock::now();
    ZoneTiming timing;
    timing.zone = z;
    ZoneNetwork zn;
    zn.zone = z;

    for (std::size_t n = 0; n < cfg.layers.size(); ++n) {
      const LayerSpec& layer = cfg.layers[n];
      LayerNetwork ln;
      ln.layer = static_cast<int>(n);
      ln.k = cfg.layer_k(n);

      auto t = Clock::now();
      Slice slice = source.slice_at(ln.k);
      timing.slice_ms += elapsed_ms(t);

      t = Clock::now();
      std::optional<PsiField> field;
      try {
        field = solve_slice(slice, layer, cfg.solver);
        net.metadata.cg_iterations += field->iterations;
        net.metadata.cg_work += field->cg_work();
      } catch (const ConvergenceError& e) {
        ln.failure = e.what();
        net.metadata.failures.push_back({z, ln.layer, e.what()});
      }
      timing.solve_ms += elapsed_ms(t);

      if (field) {
        t = Clock::now();
        const std::vector<StartHint> hints =
            cfg.hints ? collect_hints(net.zones, z, ln.layer, side) : std::vector<StartHint>{};
        LayerCorridors lc = generate_layer(slice, *field, layer, cfg.n_r, hints, cfg.corridor);
        ln.corridors = std::move(lc.corridors);
        ln.attempts = lc.attempts;
        ln.hinted_successes = lc.hinted_successes;
        timing.corridor_ms += elapsed_ms(t);
        net.fields.emplace(std::pair(z, ln.layer), std::move(*field));
      }
      net.slices.emplace(std::pair(z, ln.layer), std::move(slice));
      zn.layers.push_back(std::move(ln));
    }

    const auto t = Clock::now();
    for (std::size_t n = 0; n + 1 < zn.layers.size(); ++n) {
      auto chain = vertical_connections(
          zn.layers[n].corridors, zn.layers[n + 1].corridors,
          [&source](const CellCoord& c) { return source.is_full(c); }, zn.layers[n].k, zn.layers[n + 1].k,
          zn.layers[n].layer, zn.layers[n + 1].layer);
      zn.vertical.insert(zn.vertical.end(), chain.begin(), chain.end());
    }
    timing.vertical_ms = elapsed_ms(t);
    timing.total_ms = elapsed_ms(zone_started);
    net.metadata.timings.push_back(timing);
    net.zones.push_back(std::move(zn));
  }

  net.links = compute_links(net.zones, side);
  net.metadata.total_ms = elapsed_ms(started);
  return net;
}

// ---------------------------------------------------------------------------

NetworkGraph::NetworkGraph(const AirNetwork& net) {
  for (const ZoneNetwork& zn : net.zones) {
    for (const LayerNetwork& ln : zn.layers) {
      for (const Corridor& c : ln.corridors) {
        intern(c.cells.front());
        for (std::size_t p = 1; p < c.cells.size(); ++p) connect(c.cells[p - 1], c.cells[p]);
      }
    }
    for (const VerticalConnection& vc : zn.vertical) {
      const auto chain = vc.chain();
      for (std::size_t p = 1; p < chain.size(); ++p) connect(chain[p - 1], chain[p]);
    }
  }
  for (const InterZoneLink& link : net.links) connect(link.first, link.second);
}

std::size_t NetworkGraph::intern(const CellCoord& c) {
  const auto [it, inserted] = index_.emplace(c, cells_.size());
  if (inserted) {
    cells_.push_back(c);
    adjacency_.emplace_back();
  }
  return it->second;
}

void NetworkGraph::connect(const CellCoord& lhs, const CellCoord& rhs) {
  const std::size_t a = intern(lhs);
  const std::size_t b = intern(rhs);
  if (a == b) return;
  adjacency_[a].push_back(b);
  adjacency_[b].push_back(a);
  edges_.emplace_back(a, b);
}

std::optional<std::size_t> NetworkGraph::find(const CellCoord& c) const {
  const auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t NetworkGraph::component_count() const {
  std::vector<std::uint8_t> seen(cells_.size(), 0);
  std::vector<std::size_t> stack;
  std::size_t components = 0;
  for (std::size_t seed = 0; seed < cells_.size(); ++seed) {
    if (seen[seed]) continue;
    ++components;
    seen[seed] = 1;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      for (const std::size_t nb : adjacency_[cur]) {
        if (!seen[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
  }
  return components;
}

bool operator==(const ZoneLayerCount& lhs, const ZoneLayerCount& rhs) {
  return lhs.zone == rhs.zone && lhs.layer == rhs.layer && lhs.corridors == rhs.corridors && lhs.cells == rhs.cells;
}

NetworkStats stats(const AirNetwork& net) {
  NetworkStats s;
  const int side = net.config.grid.zone_side;
  std::set<ZoneCoord> generated(net.config.zones.begin(), net.config.zones.end());
  for (const ZoneNetwork& zn : net.zones) generated.insert(zn.zone);

  std::unordered_set<CellCoord> linked;
  for (const InterZoneLink& link : net.links) {
    linked.insert(link.first);
    linked.insert(link.second);
  }

  for (const ZoneNetwork& zn : net.zones) {
    for (const LayerNetwork& ln : zn.layers) {
      const Vec2 dir = net.config.layers.at(static_cast<std::size_t>(ln.layer)).direction;
      ZoneLayerCount count{zn.zone, ln.layer, ln.corridors.size(), 0};
      for (const Corridor& c : ln.corridors) {
        count.cells += c.cells.size();
        for (const CellCoord* end : {&c.front(), &c.back()}) {
          bool on_seam = false;
          for (const auto& step : kPlaneSteps) {
            const ZoneCoord other = zone_of_column({end->i + step[0], end->j + step[1]}, side);
            const bool crosses = std::abs(dir.x * step[0] + dir.y * step[1]) > kCrossingEpsilon;
            if (other != zn.zone && generated.count(other) != 0 && crosses) on_seam = true;
          }
          if (!on_seam) continue;
          ++s.seam_endpoints;
          if (linked.count(*end) != 0) ++s.matched_endpoints;
        }
      }
      s.corridors += count.corridors;
      s.corridor_cells += count.cells;
      s.per_zone_layer.push_back(count);
    }
    s.vertical_connections += zn.vertical.size();
  }
  s.inter_zone_ratio =
      s.seam_endpoints > 0 ? static_cast<double>(s.matched_endpoints) / static_cast<double>(s.seam_endpoints) : 0.0;
  s.inter_zone_links = net.links.size();

  const NetworkGraph graph(net);
  s.nodes = graph.node_count();
  s.edges = graph.edge_count();
  s.components = graph.component_count();
  return s;
}

std::optional<std::vector<CellCoord>> route_query(const NetworkGraph& graph, const CellCoord& src,
                                                  const CellCoord& dst) {
  const auto from = graph.find(src);
  const auto to = graph.find(dst);
  if (!from || !to) throw std::invalid_argument("route_query: source or destination is not a network cell");

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(graph.node_count(), kUnvisited);
  std::deque<std::size_t> queue{*from};
  parent[*from] = *from;
  while (!queue.empty() && parent[*to] == kUnvisited) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (const std::size_t nb : graph.neighbors(cur)) {
      if (parent[nb] == kUnvisited) {
        parent[nb] = cur;
        queue.push_back(nb);
      }
    }
  }
  if (parent[*to] == kUnvisited) return std::nullopt;

  std::vector<CellCoord> path;
  for (std::size_t cur = *to;; cur = parent[cur]) {
    path.push_back(graph.cells()[cur]);
    if (cur == *from) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::vector<CellCoord>> route_query(const AirNetwork& net, const CellCoord& src, const CellCoord& dst) {
  return route_query(NetworkGraph(net), src, dst);
}

}  // namespace airnet
