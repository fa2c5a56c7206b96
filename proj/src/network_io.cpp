#include "airnet/network_io.hpp"

#include <fstream>
#include <string>

#include "airnet/error.hpp"
#include "json_fields.hpp"

namespace airnet {

namespace jf = json_fields;
using nlohmann::json;

namespace {

json cell_triple(const CellCoord& c) { return json::array({c.i, c.j, c.k}); }

CellCoord read_triple(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(where + ": expected [i, j, k]");
  return {jf::integer(v[0], where), jf::integer(v[1], where), jf::integer(v[2], where)};
}

}  // namespace

json network_config_to_json(const NetworkConfig& cfg) {
  json layers = json::array();
  for (const LayerSpec& l : cfg.layers) {
    layers.push_back({{"altitude_m", l.altitude_m}, {"direction", {l.direction.x, l.direction.y}}});
  }
  json zones = json::array();
  for (const ZoneCoord& z : cfg.zones) zones.push_back({{"a", z.a}, {"b", z.b}});
  return {{"anchor_x_m", cfg.grid.anchor.x},
          {"anchor_y_m", cfg.grid.anchor.y},
          {"anchor_alt_m", cfg.grid.anchor.z},
          {"crs", cfg.grid.crs_label},
          {"cell_size_m", cfg.grid.cell_size},
          {"zone_side", cfg.grid.zone_side},
          {"k_max", cfg.grid.k_max},
          {"layers", layers},
          {"n_r", cfg.n_r},
          {"zones", zones},
          {"hints", cfg.hints},
          {"psi_tie_tolerance", cfg.corridor.psi_tie_tolerance},
          {"solver", {{"tol", cfg.solver.tol}, {"max_iter", cfg.solver.max_iter}, {"jacobi", cfg.solver.jacobi}}}};
}

NetworkConfig network_config_from_json(const json& doc) {
  const std::string where = "config";
  if (!doc.is_object()) throw ConfigError(where + ": expected an object");
  NetworkConfig cfg;
  cfg.grid.anchor.x = jf::optional_field(doc, "anchor_x_m", 0.0, where, jf::number);
  cfg.grid.anchor.y = jf::optional_field(doc, "anchor_y_m", 0.0, where, jf::number);
  cfg.grid.anchor.z = jf::optional_field(doc, "anchor_alt_m", 0.0, where, jf::number);
  cfg.grid.crs_label = jf::optional_field(doc, "crs", std::string("custom"), where, jf::string);
  cfg.grid.cell_size = jf::number(jf::require(doc, "cell_size_m", where), where + ".cell_size_m");
  cfg.grid.zone_side = static_cast<int>(jf::integer(jf::require(doc, "zone_side", where), where + ".zone_side"));
  cfg.grid.k_max = static_cast<int>(jf::optional_field<long long>(doc, "k_max", 200, where, jf::integer));
  cfg.n_r = static_cast<int>(jf::optional_field<long long>(doc, "n_r", 10, where, jf::integer));
  cfg.hints = jf::optional_field(doc, "hints", true, where, jf::boolean);
  cfg.corridor.psi_tie_tolerance = jf::optional_field(doc, "psi_tie_tolerance", 1e-9, where, jf::number);

  const json& layers = jf::require(doc, "layers", where);
  if (!layers.is_array()) throw ConfigError(where + ".layers: expected an array");
  for (std::size_t n = 0; n < layers.size(); ++n) {
    const std::string lw = where + ".layers[" + std::to_string(n) + "]";
    const json& entry = layers[n];
    jf::reject_unknown(entry, {"altitude_m", "direction"}, lw);
    LayerSpec layer;
    layer.index = static_cast<int>(n);
    layer.altitude_m = jf::number(jf::require(entry, "altitude_m", lw), lw + ".altitude_m");
    const json& dir = jf::require(entry, "direction", lw);
    if (!dir.is_array() || dir.size() != 2) throw ConfigError(lw + ".direction: expected [x, y]");
    layer.direction = {jf::number(dir[0], lw + ".direction"), jf::number(dir[1], lw + ".direction")};
    cfg.layers.push_back(layer);
  }

  const json& zones = jf::require(doc, "zones", where);
  if (!zones.is_array()) throw ConfigError(where + ".zones: expected an array");
  for (std::size_t z = 0; z < zones.size(); ++z) {
    const std::string zw = where + ".zones[" + std::to_string(z) + "]";
    cfg.zones.push_back({jf::integer(jf::require(zones[z], "a", zw), zw + ".a"),
                         jf::integer(jf::require(zones[z], "b", zw), zw + ".b")});
  }

  if (const auto it = doc.find("solver"); it != doc.end()) {
    const std::string sw = where + ".solver";
    jf::reject_unknown(*it, {"tol", "max_iter", "jacobi"}, sw);
    cfg.solver.tol = jf::optional_field(*it, "tol", cfg.solver.tol, sw, jf::number);
    const long long max_iter = jf::optional_field<long long>(*it, "max_iter", 0, sw, jf::integer);
    if (max_iter < 0) throw ConfigError(sw + ".max_iter: must be non-negative");
    cfg.solver.max_iter = static_cast<std::size_t>(max_iter);
    cfg.solver.jacobi = jf::optional_field(*it, "jacobi", false, sw, jf::boolean);
  }
  return cfg;
}

json stats_to_json(const NetworkStats& s) {
  json per = json::array();
  for (const ZoneLayerCount& c : s.per_zone_layer) {
    per.push_back({{"a", c.zone.a}, {"b", c.zone.b}, {"layer", c.layer}, {"corridors", c.corridors}, {"cells", c.cells}});
  }
  return {{"corridors", s.corridors},
          {"corridor_cells", s.corridor_cells},
          {"seam_endpoints", s.seam_endpoints},
          {"matched_endpoints", s.matched_endpoints},
          {"inter_zone_ratio", s.inter_zone_ratio},
          {"inter_zone_links", s.inter_zone_links},
          {"vertical_connections", s.vertical_connections},
          {"components", s.components},
          {"nodes", s.nodes},
          {"edges", s.edges},
          {"per_zone_layer", per}};
}

json network_to_json(const AirNetwork& net, const json& config) {
  json zones = json::array();
  for (const ZoneNetwork& zn : net.zones) {
    json layers = json::array();
    for (const LayerNetwork& ln : zn.layers) {
      json corridors = json::array();
      for (const Corridor& c : ln.corridors) {
        json cells = json::array();
        for (const CellCoord& cell : c.cells) cells.push_back(cell_triple(cell));
        corridors.push_back({{"cells", std::move(cells)}});
      }
      json layer = {{"n", ln.layer}, {"k", ln.k}, {"corridors", std::move(corridors)}};
      if (ln.failure) layer["failure"] = *ln.failure;
      layers.push_back(std::move(layer));
    }
    json vertical = json::array();
    for (const VerticalConnection& vc : zn.vertical) {
      json cells = json::array();
      for (const CellCoord& cell : vc.chain()) cells.push_back(cell_triple(cell));
      vertical.push_back({{"i", vc.column.i},
                          {"j", vc.column.j},
                          {"lower", vc.lower_layer},
                          {"upper", vc.upper_layer},
                          {"cells", std::move(cells)}});
    }
    zones.push_back({{"a", zn.zone.a}, {"b", zn.zone.b}, {"layers", std::move(layers)}, {"vertical", std::move(vertical)}});
  }

  json zone_times = json::array();
  for (const ZoneTiming& t : net.metadata.timings) {
    zone_times.push_back({{"a", t.zone.a},
                          {"b", t.zone.b},
                          {"slice", t.slice_ms},
                          {"solve", t.solve_ms},
                          {"corridors", t.corridor_ms},
                          {"vertical", t.vertical_ms},
                          {"total", t.total_ms}});
  }
  return {{"config", config},
          {"zones", std::move(zones)},
          {"stats", stats_to_json(stats(net))},
          {"timings_ms",
           {{"total", net.metadata.total_ms}, {"cg_iterations", net.metadata.cg_iterations}, {"zones", zone_times}}}};
}

json network_to_json(const AirNetwork& net) { return network_to_json(net, network_config_to_json(net.config)); }

AirNetwork network_from_json(const json& doc) {
  const std::string where = "network";
  AirNetwork net;
  net.config = network_config_from_json(jf::require(doc, "config", where));
  const json& zones = jf::require(doc, "zones", where);
  if (!zones.is_array()) throw ConfigError(where + ".zones: expected an array");

  for (std::size_t z = 0; z < zones.size(); ++z) {
    const std::string zw = where + ".zones[" + std::to_string(z) + "]";
    const json& zj = zones[z];
    ZoneNetwork zn;
    zn.zone = {jf::integer(jf::require(zj, "a", zw), zw), jf::integer(jf::require(zj, "b", zw), zw)};
    for (const json& lj : jf::require(zj, "layers", zw)) {
      LayerNetwork ln;
      ln.layer = static_cast<int>(jf::integer(jf::require(lj, "n", zw), zw + ".n"));
      ln.k = jf::integer(jf::require(lj, "k", zw), zw + ".k");
      if (const auto f = lj.find("failure"); f != lj.end()) {
        ln.failure = jf::string(*f, zw + ".failure");
        net.metadata.failures.push_back({zn.zone, ln.layer, *ln.failure});
      }
      for (const json& cj : jf::require(lj, "corridors", zw)) {
        Corridor c;
        c.layer = ln.layer;
        c.zone = zn.zone;
        for (const json& cell : jf::require(cj, "cells", zw)) c.cells.push_back(read_triple(cell, zw + ".cells"));
        if (c.cells.empty()) throw ConfigError(zw + ": empty corridor");
        ln.corridors.push_back(std::move(c));
      }
      zn.layers.push_back(std::move(ln));
    }
    for (const json& vj : jf::require(zj, "vertical", zw)) {
      VerticalConnection vc;
      vc.column = {jf::integer(jf::require(vj, "i", zw), zw), jf::integer(jf::require(vj, "j", zw), zw)};
      vc.lower_layer = static_cast<int>(jf::integer(jf::require(vj, "lower", zw), zw));
      vc.upper_layer = static_cast<int>(jf::integer(jf::require(vj, "upper", zw), zw));
      const json& cells = jf::require(vj, "cells", zw);
      if (!cells.is_array() || cells.size() < 2) throw ConfigError(zw + ": vertical chain needs two cells");
      vc.k_lower = read_triple(cells.front(), zw).k;
      vc.k_upper = read_triple(cells.back(), zw).k;
      zn.vertical.push_back(vc);
    }
    net.zones.push_back(std::move(zn));
  }
  net.links = compute_links(net.zones, net.config.grid.zone_side);

  if (const auto t = doc.find("timings_ms"); t != doc.end() && t->is_object()) {
    net.metadata.total_ms = t->value("total", 0.0);
    net.metadata.cg_iterations = t->value("cg_iterations", std::size_t{0});
    for (const json& zt : t->value("zones", json::array())) {
      net.metadata.timings.push_back({{zt.value("a", std::int64_t{0}), zt.value("b", std::int64_t{0})},
                                      zt.value("slice", 0.0),
                                      zt.value("solve", 0.0),
                                      zt.value("corridors", 0.0),
                                      zt.value("vertical", 0.0),
                                      zt.value("total", 0.0)});
    }
  }
  return net;
}

AirNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open network file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return network_from_json(doc);
}

}  // namespace airnet
