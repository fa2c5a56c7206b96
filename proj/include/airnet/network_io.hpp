#pragma once

// JSON serialization of network configs and generated networks.
//
// network.json layout:
//   {config, zones: [{a, b, layers: [{n, k, corridors: [{cells: [[i,j,k]...]}]}],
//                     vertical: [{i, j, lower, upper, cells: [[i,j,k]...]}]}],
//    stats, timings_ms}

#include <filesystem>

#include <json.hpp>

#include "airnet/network.hpp"

namespace airnet {

nlohmann::json network_config_to_json(const NetworkConfig& cfg);
/// Reads the network fields of a config object; other keys are ignored.
/// Throws ConfigError on missing or mistyped fields.
NetworkConfig network_config_from_json(const nlohmann::json& doc);

nlohmann::json stats_to_json(const NetworkStats& s);

/// `config` is embedded verbatim; the overload without it embeds the
/// network config.
nlohmann::json network_to_json(const AirNetwork& net, const nlohmann::json& config);
nlohmann::json network_to_json(const AirNetwork& net);

/// Rebuilds corridors, vertical connections and inter-zone links. Throws
/// ConfigError on a malformed document.
AirNetwork network_from_json(const nlohmann::json& doc);

/// Throws IoError on unreadable files or invalid JSON.
AirNetwork load_network(const std::filesystem::path& path);

}  // namespace airnet
