#include "airnet/streamfield.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "airnet/error.hpp"

namespace airnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void LayerSpec::validate() const {
  const double norm = std::hypot(direction.x, direction.y);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-9) {
    throw ConfigError("layer " + std::to_string(index) + ": direction must be a unit vector (norm " +
                      std::to_string(norm) + ")");
  }
  if (!std::isfinite(altitude_m)) {
    throw ConfigError("layer " + std::to_string(index) + ": altitude must be finite");
  }
}

std::vector<double> assign_boundary_psi(const Slice& s, const LayerSpec& layer) {
  const Vec2 rot = layer.rotated();
  std::vector<double> psi(s.cell_count(), kNaN);
  for (const std::size_t idx : s.perimeter()) psi[idx] = stream_value(s.column(idx), rot);
  return psi;
}

std::vector<ObstacleCenter> obstacle_centers(const Slice& s) {
  std::vector<ObstacleCenter> sums(s.obstacle_count());
  std::vector<std::size_t> counts(s.obstacle_count(), 0);
  for (std::size_t idx = 0; idx < s.cell_count(); ++idx) {
    const int id = s.obstacle_id(idx);
    if (id < 0) continue;
    const Column c = s.column(idx);
    sums[id].i += static_cast<double>(c.i) + 0.5;
    sums[id].j += static_cast<double>(c.j) + 0.5;
    ++counts[id];
  }
  for (std::size_t id = 0; id < sums.size(); ++id) {
    sums[id].i /= static_cast<double>(counts[id]);
    sums[id].j /= static_cast<double>(counts[id]);
  }
  return sums;
}

std::vector<double> assign_obstacle_psi(const Slice& s, const LayerSpec& layer) {
  const Vec2 rot = layer.rotated();
  std::vector<double> psi;
  psi.reserve(s.obstacle_count());
  for (const ObstacleCenter& center : obstacle_centers(s)) {
    const Column located{static_cast<std::int64_t>(std::floor(center.i)),
                         static_cast<std::int64_t>(std::floor(center.j))};
    psi.push_back(stream_value(located, rot));
  }
  return psi;
}

LaplacianSystem assemble_system(const Slice& s, const std::vector<double>& boundary_psi,
                                const std::vector<double>& obstacle_psi) {
  if (boundary_psi.size() != s.cell_count()) throw std::invalid_argument("assemble_system: boundary size mismatch");
  if (obstacle_psi.size() != s.obstacle_count()) {
    throw std::invalid_argument("assemble_system: one obstacle value per obstacle required");
  }
  const int n = s.side();
  const std::size_t m = s.cell_count();

  LaplacianSystem sys;
  sys.zone = s.zone();
  sys.side = n;
  sys.k = s.k();
  sys.roles.resize(m);
  sys.dirichlet.assign(m, kNaN);
  sys.unknown_of_cell.assign(m, -1);

  for (std::size_t idx = 0; idx < m; ++idx) {
    if (s.is_boundary(idx)) {
      sys.roles[idx] = CellRole::boundary;
      sys.dirichlet[idx] = boundary_psi[idx];
      ++sys.boundary_count;
    } else if (s.is_full(idx)) {
      sys.roles[idx] = CellRole::full_interior;
      sys.dirichlet[idx] = obstacle_psi[static_cast<std::size_t>(s.obstacle_id(idx))];
      ++sys.full_count;
    } else {
      sys.roles[idx] = CellRole::free_interior;
      sys.unknown_of_cell[idx] = static_cast<std::ptrdiff_t>(sys.unknown_cells.size());
      sys.unknown_cells.push_back(idx);
      ++sys.free_count;
    }
  }

  // Interior cells always have four in-slice neighbors.
  CsrBuilder builder(sys.unknown_cells.size());
  sys.rhs.assign(sys.unknown_cells.size(), 0.0);
  for (std::size_t row = 0; row < sys.unknown_cells.size(); ++row) {
    const std::size_t idx = sys.unknown_cells[row];
    const int u = s.u_of(idx);
    const int v = s.v_of(idx);
    const std::size_t neighbors[4] = {s.index(u + 1, v), s.index(u - 1, v), s.index(u, v + 1), s.index(u, v - 1)};
    builder.add(row, row, 4.0);
    for (const std::size_t nb : neighbors) {
      const std::ptrdiff_t col = sys.unknown_of_cell[nb];
      if (col >= 0) {
        builder.add(row, static_cast<std::size_t>(col), -1.0);
      } else {
        sys.rhs[row] += sys.dirichlet[nb];
      }
    }
  }
  sys.matrix = std::move(builder).build();

  // Free cells connected to a free boundary cell through free cells.
  sys.reachable.assign(m, 0);
  std::vector<std::size_t> stack;
  for (const std::size_t idx : s.perimeter()) {
    if (!s.is_full(idx) && !sys.reachable[idx]) {
      sys.reachable[idx] = 1;
      stack.push_back(idx);
    }
  }
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    const int u = s.u_of(cur);
    const int v = s.v_of(cur);
    auto visit = [&](int nu, int nv) {
      if (nu < 0 || nv < 0 || nu >= n || nv >= n) return;
      const std::size_t nb = s.index(nu, nv);
      if (!s.is_full(nb) && !sys.reachable[nb]) {
        sys.reachable[nb] = 1;
        stack.push_back(nb);
      }
    };
    visit(u + 1, v);
    visit(u - 1, v);
    visit(u, v + 1);
    visit(u, v - 1);
  }
  return sys;
}

std::vector<double> PsiField::values_with(CellRole role) const {
  std::vector<double> out;
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    if (roles[idx] == role) out.push_back(psi[idx]);
  }
  return out;
}

PsiField solve_psi(const LaplacianSystem& sys, const SolverOptions& options) {
  PsiField field;
  field.zone = sys.zone;
  field.side = sys.side;
  field.k = sys.k;
  field.roles = sys.roles;
  field.reachable = sys.reachable;
  field.boundary_count = sys.boundary_count;
  field.free_count = sys.free_count;
  field.full_count = sys.full_count;
  field.nonzeros = sys.matrix.nonzeros();
  field.psi = sys.dirichlet;

  const std::size_t unknowns = sys.unknown_cells.size();
  if (unknowns == 0) return field;

  // Solve for the deviation from the Dirichlet midpoint so the residual
  // target scales with the psi range rather than its offset.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const double d : sys.dirichlet) {
    if (!std::isnan(d)) {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  const double shift = 0.5 * (lo + hi);
  std::vector<double> shifted(sys.rhs);
  std::vector<double> ones(unknowns, 1.0), a_ones(unknowns);
  sys.matrix.multiply(ones, a_ones);
  for (std::size_t r = 0; r < unknowns; ++r) shifted[r] -= shift * a_ones[r];

  double b_norm = 0.0, shifted_norm = 0.0;
  for (std::size_t r = 0; r < unknowns; ++r) {
    b_norm += sys.rhs[r] * sys.rhs[r];
    shifted_norm += shifted[r] * shifted[r];
  }
  b_norm = std::sqrt(b_norm);
  shifted_norm = std::sqrt(shifted_norm);

  CgOptions cg;
  cg.tol = options.tol;
  cg.max_iter = options.max_iter > 0 ? options.max_iter
                                     : 10 * static_cast<std::size_t>(sys.side) * static_cast<std::size_t>(sys.side);
  cg.jacobi = options.jacobi;
  // The free cells form a principal submatrix of the Dirichlet Laplacian on
  // the (N-2)^2 interior, so its smallest eigenvalue is at least lambda_min.
  // Scaling the range by it bounds the error of every cell by tol * (hi - lo).
  double reference = std::min(b_norm, shifted_norm);
  if (hi > lo) {
    const double lambda_min = 4.0 * (1.0 - std::cos(std::numbers::pi / static_cast<double>(sys.side - 1)));
    reference = std::min(reference, lambda_min * (hi - lo));
  }
  // Double precision cannot push the true residual much below eps * ||b||.
  if (options.tol > 0.0) {
    reference = std::max(reference, 16.0 * std::numeric_limits<double>::epsilon() * shifted_norm / options.tol);
  }
  CgResult result = conjugate_gradient(sys.matrix, shifted, cg, reference);

  field.iterations = result.iterations;
  field.relative_residual = b_norm > 0.0 ? result.relative_residual * reference / b_norm : 0.0;
  if (!result.converged) {
    throw ConvergenceError("conjugate gradient did not converge in " + std::to_string(result.iterations) +
                               " iterations for zone (" + std::to_string(sys.zone.a) + "," +
                               std::to_string(sys.zone.b) + ") k=" + std::to_string(sys.k) +
                               " (relative residual " + std::to_string(field.relative_residual) + ")",
                           result.iterations, field.relative_residual);
  }
  for (std::size_t r = 0; r < unknowns; ++r) field.psi[sys.unknown_cells[r]] = result.x[r] + shift;
  return field;
}

PsiField solve_slice(const Slice& s, const LayerSpec& layer, const SolverOptions& options) {
  return solve_psi(assemble_system(s, assign_boundary_psi(s, layer), assign_obstacle_psi(s, layer)), options);
}

void write_psi_csv(std::ostream& out, const PsiField& field) {
  out << std::setprecision(17);
  for (int v = 0; v < field.side; ++v) {
    for (int u = 0; u < field.side; ++u) {
      if (u > 0) out << ',';
      out << field.at(u, v);
    }
    out << '\n';
  }
}

}  // namespace airnet
