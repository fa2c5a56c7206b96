#pragma once

// Command-line driver: generate, stats, route and catalog subcommands.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "airnet/network.hpp"
#include "airnet/run_config.hpp"

namespace airnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitSolver = 4;

struct GenerateOverrides {
  std::optional<std::string> output_dir;
  std::optional<double> tol;
  std::optional<bool> render;
  bool offline = false;
};

/// Applies command-line overrides on top of a loaded config.
void apply_overrides(RunConfig& cfg, const GenerateOverrides& overrides);

struct GenerateOutcome {
  AirNetwork network;
  std::filesystem::path output_dir;
  std::vector<std::string> warnings;
};

/// Generates the network and writes all artifacts. Nothing is written when
/// any zone-layer fails to solve. Throws ConfigError, IoError or
/// ConvergenceError.
GenerateOutcome run_generate(const RunConfig& cfg);

std::string stats_text(const NetworkStats& s);

/// Parses "i,j,k". Throws ConfigError.
CellCoord parse_cell(const std::string& text);

/// Entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace airnet::cli
