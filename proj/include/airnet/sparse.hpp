#pragma once

// Compressed sparse row storage and a (optionally Jacobi-preconditioned)
// conjugate gradient solver for symmetric positive definite systems.

#include <cstddef>
#include <span>
#include <vector>

namespace airnet {

struct CsrMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col;
  std::vector<double> val;

  std::size_t nonzeros() const { return val.size(); }
  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  double at(std::size_t r, std::size_t c) const;
  bool is_symmetric(double tol = 0.0) const;
};

/// Row-by-row CSR construction; columns within a row may come in any order.
class CsrBuilder {
 public:
  explicit CsrBuilder(std::size_t rows);
  void add(std::size_t row, std::size_t col, double value);
  CsrMatrix build() &&;

 private:
  std::size_t rows_;
  std::vector<std::vector<std::pair<std::size_t, double>>> entries_;
};

struct CgOptions {
  double tol = 1e-9;
  std::size_t max_iter = 1000;
  bool jacobi = false;
};

struct CgResult {
  std::vector<double> x;
  std::size_t iterations = 0;
  /// ||b - A x|| / reference norm at exit.
  double relative_residual = 0.0;
  bool converged = false;
};

/// Stops once ||b - A x|| <= tol * reference_norm, verified on the true
/// residual. A non-positive reference_norm means ||b||. A zero right-hand
/// side returns x = 0 immediately.
CgResult conjugate_gradient(const CsrMatrix& a, std::span<const double> b, const CgOptions& options,
                            double reference_norm = 0.0);

}  // namespace airnet
