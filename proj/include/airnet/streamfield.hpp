#pragma once

// Discrete stream function of an ideal 2-D flow through one slice.
//
// Boundary cells carry psi = [i j] . d_R where d_R is the layer direction
// rotated +90 degrees (counterclockwise). Every obstacle carries the value
// of that same formula at the cell holding its mean center. The remaining
// free interior cells solve the graph Laplace equation with those Dirichlet
// values.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "airnet/elevation.hpp"
#include "airnet/grid.hpp"
#include "airnet/sparse.hpp"

namespace airnet {

struct LayerSpec {
  int index = 0;
  /// Altitude in meters on the same datum as the grid anchor's z.
  double altitude_m = 0.0;
  Vec2 direction{1.0, 0.0};

  /// direction rotated +90 degrees: (x, y) -> (-y, x).
  Vec2 rotated() const { return {-direction.y, direction.x}; }
  /// Throws ConfigError naming the layer when |direction| != 1 within 1e-9.
  void validate() const;
};

enum class CellRole : std::uint8_t { boundary, free_interior, full_interior };

struct SolverOptions {
  double tol = 1e-9;
  /// 0 selects 10 * N^2.
  std::size_t max_iter = 0;
  bool jacobi = false;
};

/// [i j] . d_R
inline double stream_value(const Column& c, const Vec2& rotated) {
  return static_cast<double>(c.i) * rotated.x + static_cast<double>(c.j) * rotated.y;
}

/// Per local cell; NaN on non-boundary cells.
std::vector<double> assign_boundary_psi(const Slice& s, const LayerSpec& layer);

/// Mean cell center of one obstacle in fractional cell units.
struct ObstacleCenter {
  double i = 0.0;
  double j = 0.0;
};
std::vector<ObstacleCenter> obstacle_centers(const Slice& s);

/// One value per obstacle id.
std::vector<double> assign_obstacle_psi(const Slice& s, const LayerSpec& layer);

/// Linear system over the free interior cells: A psi_f = b.
struct LaplacianSystem {
  ZoneCoord zone;
  int side = 0;
  std::int64_t k = 0;
  std::vector<CellRole> roles;
  /// Prescribed value per cell; NaN for unknowns.
  std::vector<double> dirichlet;
  std::vector<std::size_t> unknown_cells;
  /// Unknown index per cell, -1 for Dirichlet cells.
  std::vector<std::ptrdiff_t> unknown_of_cell;
  CsrMatrix matrix;
  std::vector<double> rhs;
  /// Free cells joined to a free boundary cell through free cells.
  std::vector<std::uint8_t> reachable;

  std::size_t boundary_count = 0;
  std::size_t free_count = 0;
  std::size_t full_count = 0;
};

/// Builds the free-free block of the slice Laplacian and the right-hand
/// side -(L_fb psi_b + L_fo psi_o). Boundary cells use the boundary values
/// even when full.
LaplacianSystem assemble_system(const Slice& s, const std::vector<double>& boundary_psi,
                                const std::vector<double>& obstacle_psi);

struct PsiField {
  ZoneCoord zone;
  int side = 0;
  std::int64_t k = 0;
  std::vector<double> psi;
  std::vector<CellRole> roles;
  std::vector<std::uint8_t> reachable;

  std::size_t boundary_count = 0;
  std::size_t free_count = 0;
  std::size_t full_count = 0;

  std::size_t iterations = 0;
  double relative_residual = 0.0;
  std::size_t nonzeros = 0;

  double at(int u, int v) const {
    return psi[static_cast<std::size_t>(v) * static_cast<std::size_t>(side) + static_cast<std::size_t>(u)];
  }
  /// Iterations times matrix nonzeros.
  double cg_work() const { return static_cast<double>(iterations) * static_cast<double>(nonzeros); }

  std::vector<double> boundary_values() const { return values_with(CellRole::boundary); }
  std::vector<double> free_values() const { return values_with(CellRole::free_interior); }
  std::vector<double> obstacle_values() const { return values_with(CellRole::full_interior); }

 private:
  std::vector<double> values_with(CellRole role) const;
};

/// Solves with conjugate gradients and merges the Dirichlet values. Throws
/// ConvergenceError when the iteration cap is reached.
PsiField solve_psi(const LaplacianSystem& sys, const SolverOptions& options = {});

/// Boundary values, obstacle values, assembly and solve in one call.
PsiField solve_slice(const Slice& s, const LayerSpec& layer, const SolverOptions& options = {});

/// CSV grid, one row per j ascending, one column per i ascending.
void write_psi_csv(std::ostream& out, const PsiField& field);

}  // namespace airnet
