#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "airnet/elevation.hpp"
#include "airnet/streamfield.hpp"

namespace testing {

inline airnet::Slice make_slice(int n, const std::vector<airnet::CellState>& states, airnet::ZoneCoord zone = {0, 0},
                                std::int64_t k = 10) {
  return airnet::Slice(zone, n, k, states);
}

inline airnet::Slice empty_slice(int n, airnet::ZoneCoord zone = {0, 0}, std::int64_t k = 10) {
  return make_slice(n, std::vector<airnet::CellState>(static_cast<std::size_t>(n) * n, airnet::CellState::free), zone,
                    k);
}

/// Local cells u0 <= u < u1, v0 <= v < v1 are full.
inline std::vector<airnet::CellState> with_block(int n, int u0, int v0, int u1, int v1,
                                                 std::vector<airnet::CellState> states = {}) {
  if (states.empty()) states.assign(static_cast<std::size_t>(n) * n, airnet::CellState::free);
  for (int v = v0; v < v1; ++v) {
    for (int u = u0; u < u1; ++u) states[static_cast<std::size_t>(v) * n + u] = airnet::CellState::full;
  }
  return states;
}

inline airnet::LayerSpec layer_along(double dx, double dy, int index = 0, double altitude = 50.0) {
  airnet::LayerSpec l;
  l.index = index;
  l.altitude_m = altitude;
  l.direction = {dx, dy};
  return l;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("airnet_test_" + std::to_string(stamp) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testing
