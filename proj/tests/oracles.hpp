#pragma once

// Independent reference implementations used to check the library. None of
// these call into the code under test beyond plain data types.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "airnet/elevation.hpp"
#include "airnet/grid.hpp"

namespace oracle {

// 4-connected components of `full` cells by breadth-first search; label -1
// for free cells, labels in order of first cell in linear scan.
inline std::vector<int> flood_labels(int n, const std::vector<bool>& full, int* count = nullptr) {
  std::vector<int> label(full.size(), -1);
  int next = 0;
  for (int start = 0; start < n * n; ++start) {
    if (!full[start] || label[start] >= 0) continue;
    std::deque<int> queue{start};
    label[start] = next;
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      const int u = cur % n;
      const int v = cur / n;
      const int around[4][2] = {{u + 1, v}, {u - 1, v}, {u, v + 1}, {u, v - 1}};
      for (const auto& p : around) {
        if (p[0] < 0 || p[1] < 0 || p[0] >= n || p[1] >= n) continue;
        const int nb = p[1] * n + p[0];
        if (full[nb] && label[nb] < 0) {
          label[nb] = next;
          queue.push_back(nb);
        }
      }
    }
    ++next;
  }
  if (count != nullptr) *count = next;
  return label;
}

// Dirichlet values and the full solution of the slice problem, assembled
// cell by cell as a dense N^2 x N^2 system and solved by LU.
struct DenseSolution {
  std::vector<double> psi;
  std::vector<bool> unknown;
};

inline DenseSolution dense_slice_solve(int n, std::int64_t oi, std::int64_t oj, const std::vector<bool>& full,
                                       double dx, double dy) {
  const double rx = -dy;
  const double ry = dx;
  int obstacles = 0;
  const std::vector<int> label = flood_labels(n, full, &obstacles);
  std::vector<double> sum_i(obstacles, 0.0), sum_j(obstacles, 0.0), members(obstacles, 0.0);
  for (int idx = 0; idx < n * n; ++idx) {
    if (label[idx] < 0) continue;
    sum_i[label[idx]] += static_cast<double>(oi + idx % n) + 0.5;
    sum_j[label[idx]] += static_cast<double>(oj + idx / n) + 0.5;
    members[label[idx]] += 1.0;
  }
  const int m = n * n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  DenseSolution out;
  out.unknown.assign(m, false);
  for (int idx = 0; idx < m; ++idx) {
    const int u = idx % n;
    const int v = idx / n;
    const bool edge = u == 0 || v == 0 || u == n - 1 || v == n - 1;
    a(idx, idx) = 1.0;
    if (edge) {
      b(idx) = static_cast<double>(oi + u) * rx + static_cast<double>(oj + v) * ry;
    } else if (full[idx]) {
      const int o = label[idx];
      const double ci = std::floor(sum_i[o] / members[o]);
      const double cj = std::floor(sum_j[o] / members[o]);
      b(idx) = ci * rx + cj * ry;
    } else {
      out.unknown[idx] = true;
      a(idx, idx) = 4.0;
      a(idx, idx + 1) = -1.0;
      a(idx, idx - 1) = -1.0;
      a(idx, idx + n) = -1.0;
      a(idx, idx - n) = -1.0;
    }
  }
  const Eigen::VectorXd x = a.partialPivLu().solve(b);
  out.psi.assign(x.data(), x.data() + m);
  return out;
}

// Highest cell altitude per column by scanning every point for every cell.
inline std::vector<std::int64_t> brute_force_heights(const std::vector<airnet::Vec3>& points, std::int64_t a,
                                                     std::int64_t b, int n, double ax, double ay, double az,
                                                     double cell) {
  std::vector<std::int64_t> heights(static_cast<std::size_t>(n) * n, std::numeric_limits<std::int64_t>::max());
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      const std::int64_t gi = a * n + u;
      const std::int64_t gj = b * n + v;
      std::optional<std::int64_t> best;
      for (const airnet::Vec3& p : points) {
        const auto pi = static_cast<std::int64_t>(std::floor((p.x - ax) / cell));
        const auto pj = static_cast<std::int64_t>(std::floor((p.y - ay) / cell));
        if (pi != gi || pj != gj) continue;
        const auto pk = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((p.z - az) / cell)));
        best = best ? std::max(*best, pk) : pk;
      }
      if (best) heights[static_cast<std::size_t>(v) * n + u] = *best;
    }
  }
  return heights;
}

// Straight transcription of the corridor growth loop: start on an oriented
// boundary cell, step to the free, unvisited, non-regressing neighbor with
// psi closest to the start value, stop on a boundary cell of the opposite
// orientation or fail on a dead end or a reserved cell.
struct ReferenceCorridor {
  bool success = false;
  std::vector<std::pair<int, int>> cells;
};

inline int reference_orientation(int n, int u, int v, double dx, double dy) {
  double nx = 0.0, ny = 0.0;
  if (u == 0) nx += 1.0;
  if (u == n - 1) nx -= 1.0;
  if (v == 0) ny += 1.0;
  if (v == n - 1) ny -= 1.0;
  const double d = dx * nx + dy * ny;
  if (d > 1e-12) return 1;
  if (d < -1e-12) return -1;
  return 0;
}

inline ReferenceCorridor reference_grow(int n, const std::vector<bool>& full, const std::vector<double>& psi,
                                        const std::vector<bool>& reserved, int su, int sv, double dx, double dy,
                                        double tie = 1e-9) {
  ReferenceCorridor out;
  const int start_orientation = reference_orientation(n, su, sv, dx, dy);
  const double gx = start_orientation * dx;
  const double gy = start_orientation * dy;
  const double psi0 = psi[sv * n + su];
  std::vector<bool> visited(full.size(), false);
  int u = su, v = sv;
  visited[v * n + u] = true;
  out.cells.push_back({u, v});
  auto on_edge = [n](int cu, int cv) { return cu == 0 || cv == 0 || cu == n - 1 || cv == n - 1; };
  while (true) {
    const bool done = out.cells.size() > 1 && on_edge(u, v) &&
                      reference_orientation(n, u, v, dx, dy) == -start_orientation;
    if (done) break;
    const double here = u * gx + v * gy;
    int best = -1;
    double best_distance = 0.0, best_progress = 0.0;
    const int steps[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    std::vector<std::pair<int, std::pair<double, double>>> kept;
    for (int s = 0; s < 4; ++s) {
      const int nu = u + steps[s][0];
      const int nv = v + steps[s][1];
      if (nu < 0 || nv < 0 || nu >= n || nv >= n) continue;
      const int idx = nv * n + nu;
      if (full[idx] || visited[idx]) continue;
      const double progress = nu * gx + nv * gy;
      if (progress < here) continue;
      kept.push_back({idx, {std::abs(psi[idx] - psi0), progress}});
    }
    if (kept.empty()) return out;
    double closest = std::numeric_limits<double>::infinity();
    for (const auto& k : kept) closest = std::min(closest, k.second.first);
    for (const auto& k : kept) {
      if (k.second.first > closest + tie) continue;
      if (best < 0 || k.second.second > best_progress) {
        best = k.first;
        best_distance = k.second.first;
        best_progress = k.second.second;
      }
    }
    (void)best_distance;
    if (reserved[best]) return out;
    visited[best] = true;
    u = best % n;
    v = best / n;
    out.cells.push_back({u, v});
  }
  out.success = true;
  return out;
}

// Random slice states with the requested density of full interior cells
// grouped into small rectangles.
inline std::vector<airnet::CellState> random_states(int n, double density, std::mt19937_64& rng) {
  std::vector<airnet::CellState> states(static_cast<std::size_t>(n) * n, airnet::CellState::free);
  const std::size_t target = static_cast<std::size_t>(density * n * n);
  std::uniform_int_distribution<int> pos(0, n - 1);
  std::uniform_int_distribution<int> extent(1, std::max(1, n / 6));
  std::size_t full = 0;
  for (int attempt = 0; attempt < 10 * n * n && full < target; ++attempt) {
    const int u0 = pos(rng), v0 = pos(rng), w = extent(rng), h = extent(rng);
    for (int v = v0; v < std::min(n, v0 + h) && full < target; ++v) {
      for (int u = u0; u < std::min(n, u0 + w) && full < target; ++u) {
        auto& s = states[static_cast<std::size_t>(v) * n + u];
        if (s == airnet::CellState::free) {
          s = airnet::CellState::full;
          ++full;
        }
      }
    }
  }
  return states;
}

inline std::vector<bool> as_bools(const std::vector<airnet::CellState>& states) {
  std::vector<bool> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = states[i] == airnet::CellState::full;
  return out;
}

}  // namespace oracle
