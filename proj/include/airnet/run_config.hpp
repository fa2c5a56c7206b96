#pragma once

// Run configuration for the command-line tool: network parameters plus
// per-zone elevation sources, output location and render toggles.

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "airnet/network.hpp"

namespace airnet {

enum class SourceType { points, raster, flat };

struct ZoneSourceSpec {
  SourceType type = SourceType::flat;
  /// Points file or raster sidecar, as written in the config.
  std::string path;
  /// Ground altitude in meters for flat sources.
  double ground_m = 0.0;
};

struct RenderOptions {
  bool layers = true;
  bool combined = true;
  bool psi = false;

  friend bool operator==(const RenderOptions&, const RenderOptions&) = default;
};

struct RunConfig {
  NetworkConfig network;
  /// Geodetic anchor, carried as metadata only.
  std::optional<double> anchor_lon;
  std::optional<double> anchor_lat;
  std::map<ZoneCoord, ZoneSourceSpec> sources;
  std::string output_dir = "out";
  RenderOptions render;
  bool offline = false;
  /// Directory relative source and output paths are resolved against.
  std::filesystem::path base_dir;
};

/// Throws ConfigError on unknown, missing or mistyped fields and on an
/// invalid network config.
RunConfig run_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
/// Throws IoError when the file cannot be read or parsed.
RunConfig load_run_config(const std::filesystem::path& path);

/// Normalized form with every default filled in.
nlohmann::json run_config_to_json(const RunConfig& cfg);

std::filesystem::path resolve_path(const RunConfig& cfg, const std::string& path);

/// Reads every zone's source. Throws IoError naming the file on missing or
/// malformed data.
ZoneSources load_sources(const RunConfig& cfg);

}  // namespace airnet
