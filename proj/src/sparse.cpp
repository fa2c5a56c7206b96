#include "airnet/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace airnet {

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) sum += val[p] * x[col[p]];
    y[r] = sum;
  }
}

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  for (std::size_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) {
    if (col[p] == c) return val[p];
  }
  return 0.0;
}

bool CsrMatrix::is_symmetric(double tol) const {
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) {
      if (std::abs(val[p] - at(col[p], r)) > tol) return false;
    }
  }
  return true;
}

CsrBuilder::CsrBuilder(std::size_t rows) : rows_(rows), entries_(rows) {}

void CsrBuilder::add(std::size_t row, std::size_t col, double value) {
  if (row >= rows_ || col >= rows_) throw std::out_of_range("CsrBuilder::add: index out of range");
  entries_[row].emplace_back(col, value);
}

CsrMatrix CsrBuilder::build() && {
  CsrMatrix m;
  m.rows = rows_;
  m.row_ptr.assign(rows_ + 1, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto& row = entries_[r];
    std::sort(row.begin(), row.end());
    // Merge duplicate columns.
    std::size_t out = 0;
    for (std::size_t p = 0; p < row.size(); ++p) {
      if (out > 0 && row[out - 1].first == row[p].first) {
        row[out - 1].second += row[p].second;
      } else {
        row[out++] = row[p];
      }
    }
    row.resize(out);
    m.row_ptr[r + 1] = m.row_ptr[r] + out;
  }
  m.col.reserve(m.row_ptr.back());
  m.val.reserve(m.row_ptr.back());
  for (auto& row : entries_) {
    for (const auto& [c, v] : row) {
      m.col.push_back(c);
      m.val.push_back(v);
    }
    row.clear();
    row.shrink_to_fit();
  }
  return m;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

CgResult conjugate_gradient(const CsrMatrix& a, std::span<const double> b, const CgOptions& options,
                            double reference_norm) {
  const std::size_t n = a.rows;
  if (b.size() != n) throw std::invalid_argument("conjugate_gradient: size mismatch");

  CgResult result;
  result.x.assign(n, 0.0);
  const double b_norm = std::sqrt(dot(b, b));
  if (reference_norm <= 0.0) reference_norm = b_norm;
  if (n == 0 || b_norm == 0.0) {
    result.converged = true;
    return result;
  }
  const double target = options.tol * reference_norm;

  std::vector<double> inv_diag(n, 1.0);
  if (options.jacobi) {
    for (std::size_t r = 0; r < n; ++r) {
      const double d = a.at(r, r);
      if (d <= 0.0) throw std::invalid_argument("conjugate_gradient: Jacobi needs a positive diagonal");
      inv_diag[r] = 1.0 / d;
    }
  }

  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z(n), p(n), ap(n);
  auto precondition = [&] {
    for (std::size_t q = 0; q < n; ++q) z[q] = inv_diag[q] * r[q];
  };

  std::size_t iter = 0;
  double r_norm = b_norm;
  while (iter < options.max_iter) {
    // (Re)start from the current iterate's true residual.
    precondition();
    p = z;
    double rz = dot(r, z);
    const std::size_t restart_iter = iter;
    while (iter < options.max_iter && r_norm > target) {
      a.multiply(p, ap);
      const double pap = dot(p, ap);
      if (pap <= 0.0) break;
      const double alpha = rz / pap;
      for (std::size_t q = 0; q < n; ++q) {
        result.x[q] += alpha * p[q];
        r[q] -= alpha * ap[q];
      }
      ++iter;
      r_norm = std::sqrt(dot(r, r));
      precondition();
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t q = 0; q < n; ++q) p[q] = z[q] + beta * p[q];
    }

    a.multiply(result.x, ap);
    for (std::size_t q = 0; q < n; ++q) r[q] = b[q] - ap[q];
    r_norm = std::sqrt(dot(r, r));
    if (r_norm <= target) {
      result.converged = true;
      break;
    }
    if (iter >= options.max_iter || iter == restart_iter) break;
  }

  result.iterations = iter;
  result.relative_residual = r_norm / reference_norm;
  return result;
}

}  // namespace airnet
