#pragma once

// Multi-zone, multi-layer air network generation and queries.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "airnet/corridor.hpp"
#include "airnet/elevation.hpp"
#include "airnet/grid.hpp"
#include "airnet/streamfield.hpp"

namespace airnet {

struct NetworkConfig {
  GridConfig grid;
  std::vector<LayerSpec> layers;
  int n_r = 10;
  std::vector<ZoneCoord> zones;
  SolverOptions solver;
  CorridorOptions corridor;
  /// Prioritize starts that continue neighbor-zone corridors.
  bool hints = true;

  /// Throws ConfigError on an empty layer list, non-increasing altitudes,
  /// two layers sharing a cell altitude, n_r < 1, layers outside
  /// [0, k_max], or repeated zones.
  void validate() const;
  std::int64_t layer_k(std::size_t layer) const;
};

/// Elevation data for one zone: an elevation map, or per-altitude slices
/// taken from a 3-d model.
class ZoneSource {
 public:
  static ZoneSource from_map(ElevationMap map);
  static ZoneSource from_slices(std::vector<Slice> slices);

  bool has_map() const { return map_.has_value(); }
  const ElevationMap& map() const { return *map_; }
  bool has_slice(std::int64_t k) const;
  /// Throws ConfigError when a slice source lacks k.
  Slice slice_at(std::int64_t k) const;
  /// Unknown altitudes of a slice source count as free.
  bool is_full(const CellCoord& c) const;

 private:
  std::optional<ElevationMap> map_;
  std::map<std::int64_t, Slice> slices_;
};

using ZoneSources = std::map<ZoneCoord, ZoneSource>;

struct LayerNetwork {
  int layer = 0;
  std::int64_t k = 0;
  std::vector<Corridor> corridors;
  std::size_t attempts = 0;
  std::size_t hinted_successes = 0;
  std::optional<std::string> failure;
};

struct ZoneNetwork {
  ZoneCoord zone;
  std::vector<LayerNetwork> layers;
  std::vector<VerticalConnection> vertical;
};

/// Cartesian-adjacent corridor endpoints on opposite sides of a zone seam.
struct InterZoneLink {
  int layer = 0;
  CellCoord first;
  CellCoord second;
};

struct ZoneTiming {
  ZoneCoord zone;
  double slice_ms = 0.0;
  double solve_ms = 0.0;
  double corridor_ms = 0.0;
  double vertical_ms = 0.0;
  double total_ms = 0.0;
};

struct GenerationFailure {
  ZoneCoord zone;
  int layer = 0;
  std::string message;
};

struct GenerationMetadata {
  std::vector<ZoneTiming> timings;
  std::vector<GenerationFailure> failures;
  double total_ms = 0.0;
  std::size_t cg_iterations = 0;
  double cg_work = 0.0;
};

struct AirNetwork {
  NetworkConfig config;
  /// Row-major zone order.
  std::vector<ZoneNetwork> zones;
  std::vector<InterZoneLink> links;
  GenerationMetadata metadata;

  /// In-memory only: slices and fields per (zone, layer) for rendering.
  std::map<std::pair<ZoneCoord, int>, Slice> slices;
  std::map<std::pair<ZoneCoord, int>, PsiField> fields;

  const ZoneNetwork* find_zone(const ZoneCoord& z) const;
};

/// Generates zones in row-major order; each zone's starts are hinted by the
/// corridors of already committed neighbors. A solver failure empties that
/// zone-layer and is recorded in metadata. Throws ConfigError on an invalid
/// config or a zone without a usable source.
AirNetwork generate(const NetworkConfig& cfg, const ZoneSources& sources);

/// Hints for zone z at one layer from the committed zones in `committed`.
std::vector<StartHint> collect_hints(const std::vector<ZoneNetwork>& committed, const ZoneCoord& z, int layer,
                                     int zone_side);

/// Links between endpoint cells across every seam of the network.
std::vector<InterZoneLink> compute_links(const std::vector<ZoneNetwork>& zones, int zone_side);

/// Nodes are corridor and vertical-chain cells; edges join consecutive
/// corridor cells, consecutive chain cells and inter-zone links.
class NetworkGraph {
 public:
  explicit NetworkGraph(const AirNetwork& net);

  std::size_t node_count() const { return cells_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<CellCoord>& cells() const { return cells_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  std::optional<std::size_t> find(const CellCoord& c) const;
  const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_[node]; }
  std::size_t component_count() const;

 private:
  std::size_t intern(const CellCoord& c);
  void connect(const CellCoord& lhs, const CellCoord& rhs);

  std::vector<CellCoord> cells_;
  std::unordered_map<CellCoord, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

struct ZoneLayerCount {
  ZoneCoord zone;
  int layer = 0;
  std::size_t corridors = 0;
  std::size_t cells = 0;
};

struct NetworkStats {
  std::vector<ZoneLayerCount> per_zone_layer;
  std::size_t corridors = 0;
  std::size_t corridor_cells = 0;
  /// Corridor endpoints next to a generated zone across a seam that the
  /// layer direction crosses (not parallel to it).
  std::size_t seam_endpoints = 0;
  std::size_t matched_endpoints = 0;
  /// matched_endpoints / seam_endpoints, 0 without seams.
  double inter_zone_ratio = 0.0;
  std::size_t inter_zone_links = 0;
  std::size_t vertical_connections = 0;
  std::size_t components = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;

  friend bool operator==(const NetworkStats&, const NetworkStats&) = default;
};

bool operator==(const ZoneLayerCount& lhs, const ZoneLayerCount& rhs);

NetworkStats stats(const AirNetwork& net);

/// Shortest path by cell count, or nullopt when src and dst are not
/// connected. Throws std::invalid_argument when either is not a node.
std::optional<std::vector<CellCoord>> route_query(const AirNetwork& net, const CellCoord& src, const CellCoord& dst);
std::optional<std::vector<CellCoord>> route_query(const NetworkGraph& graph, const CellCoord& src,
                                                  const CellCoord& dst);

}  // namespace airnet
