#include "airnet/run_config.hpp"

#include <fstream>
#include <stdexcept>

#include "airnet/error.hpp"
#include "airnet/network_io.hpp"
#include "airnet/point_io.hpp"
#include "airnet/raster_io.hpp"
#include "json_fields.hpp"

namespace airnet {

namespace jf = json_fields;
using nlohmann::json;

namespace {

const char* source_name(SourceType t) {
  switch (t) {
    case SourceType::points:
      return "points";
    case SourceType::raster:
      return "raster";
    case SourceType::flat:
      return "flat";
  }
  return "flat";
}

ZoneSourceSpec parse_source(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::string type = jf::string(jf::require(obj, "type", where), where + ".type");
  ZoneSourceSpec spec;
  if (type == "points" || type == "raster") {
    jf::reject_unknown(obj, {"type", "path"}, where);
    spec.type = type == "points" ? SourceType::points : SourceType::raster;
    spec.path = jf::string(jf::require(obj, "path", where), where + ".path");
    if (spec.path.empty()) throw ConfigError(where + ".path: must not be empty");
  } else if (type == "flat") {
    jf::reject_unknown(obj, {"type", "ground_m"}, where);
    spec.type = SourceType::flat;
    spec.ground_m = jf::optional_field(obj, "ground_m", 0.0, where, jf::number);
  } else {
    throw ConfigError(where + ".type: expected points, raster or flat, got '" + type + "'");
  }
  return spec;
}

}  // namespace

RunConfig run_config_from_json(const json& doc, const std::filesystem::path& base_dir) {
  const std::string where = "config";
  if (!doc.is_object()) throw ConfigError(where + ": expected an object");
  jf::reject_unknown(doc,
                     {"anchor_lon", "anchor_lat", "anchor_x_m", "anchor_y_m", "anchor_alt_m", "crs", "cell_size_m",
                      "zone_side", "k_max", "layers", "n_r", "zones", "hints", "psi_tie_tolerance", "solver",
                      "output_dir", "render", "offline"},
                     where);
  RunConfig cfg;
  cfg.base_dir = base_dir;
  cfg.network = network_config_from_json(doc);
  if (doc.contains("anchor_lon")) cfg.anchor_lon = jf::number(doc["anchor_lon"], where + ".anchor_lon");
  if (doc.contains("anchor_lat")) cfg.anchor_lat = jf::number(doc["anchor_lat"], where + ".anchor_lat");
  cfg.output_dir = jf::optional_field(doc, "output_dir", cfg.output_dir, where, jf::string);
  cfg.offline = jf::optional_field(doc, "offline", false, where, jf::boolean);

  if (const auto it = doc.find("render"); it != doc.end()) {
    const std::string rw = where + ".render";
    jf::reject_unknown(*it, {"layers", "combined", "psi"}, rw);
    cfg.render.layers = jf::optional_field(*it, "layers", cfg.render.layers, rw, jf::boolean);
    cfg.render.combined = jf::optional_field(*it, "combined", cfg.render.combined, rw, jf::boolean);
    cfg.render.psi = jf::optional_field(*it, "psi", cfg.render.psi, rw, jf::boolean);
  }

  const json& zones = doc["zones"];
  for (std::size_t z = 0; z < zones.size(); ++z) {
    const std::string zw = where + ".zones[" + std::to_string(z) + "]";
    jf::reject_unknown(zones[z], {"a", "b", "source"}, zw);
    cfg.sources[cfg.network.zones[z]] = parse_source(jf::require(zones[z], "source", zw), zw + ".source");
  }
  cfg.network.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return run_config_from_json(doc, path.parent_path());
}

json run_config_to_json(const RunConfig& cfg) {
  json doc = network_config_to_json(cfg.network);
  if (cfg.anchor_lon) doc["anchor_lon"] = *cfg.anchor_lon;
  if (cfg.anchor_lat) doc["anchor_lat"] = *cfg.anchor_lat;
  for (json& zone : doc["zones"]) {
    const ZoneSourceSpec& spec = cfg.sources.at({zone["a"].get<std::int64_t>(), zone["b"].get<std::int64_t>()});
    json source = {{"type", source_name(spec.type)}};
    if (spec.type == SourceType::flat) {
      source["ground_m"] = spec.ground_m;
    } else {
      source["path"] = spec.path;
    }
    zone["source"] = std::move(source);
  }
  doc["output_dir"] = cfg.output_dir;
  doc["render"] = {{"layers", cfg.render.layers}, {"combined", cfg.render.combined}, {"psi", cfg.render.psi}};
  doc["offline"] = cfg.offline;
  return doc;
}

std::filesystem::path resolve_path(const RunConfig& cfg, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || cfg.base_dir.empty()) return p;
  return cfg.base_dir / p;
}

ZoneSources load_sources(const RunConfig& cfg) {
  ZoneSources sources;
  const GridConfig& grid = cfg.network.grid;
  for (const auto& [zone, spec] : cfg.sources) {
    switch (spec.type) {
      case SourceType::flat: {
        ElevationMap map(zone, grid.zone_side);
        const std::int64_t k = std::max<std::int64_t>(0, altitude_to_k(spec.ground_m, grid));
        for (int v = 0; v < grid.zone_side; ++v) {
          for (int u = 0; u < grid.zone_side; ++u) map.set_height_local(u, v, k);
        }
        sources.emplace(zone, ZoneSource::from_map(std::move(map)));
        break;
      }
      case SourceType::points: {
        const auto path = resolve_path(cfg, spec.path);
        try {
          sources.emplace(zone, ZoneSource::from_map(build_map_from_points(read_points(path), zone, grid)));
        } catch (const std::invalid_argument& e) {
          throw IoError(path.string() + ": " + e.what());
        }
        break;
      }
      case SourceType::raster: {
        const auto path = resolve_path(cfg, spec.path);
        try {
          sources.emplace(zone,
                          ZoneSource::from_slices(build_map_from_slices(load_raster_sidecar(path, grid.zone_side),
                                                                        zone, grid)));
        } catch (const std::invalid_argument& e) {
          throw IoError(path.string() + ": " + e.what());
        }
        break;
      }
    }
  }
  return sources;
}

}  // namespace airnet
