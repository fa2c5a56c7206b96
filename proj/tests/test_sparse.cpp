#include <doctest.h>

#include <cmath>
#include <random>

#include "airnet/sparse.hpp"

using namespace airnet;

namespace {

// 1-d Laplacian tridiag(-1, 2, -1).
CsrMatrix tridiagonal(std::size_t n) {
  CsrBuilder b(n);
  for (std::size_t r = 0; r < n; ++r) {
    b.add(r, r, 2.0);
    if (r > 0) b.add(r, r - 1, -1.0);
    if (r + 1 < n) b.add(r, r + 1, -1.0);
  }
  return std::move(b).build();
}

}  // namespace

TEST_SUITE("sparse") {
  TEST_CASE("builder sorts columns and merges duplicates") {
    CsrBuilder b(2);
    b.add(0, 1, 1.0);
    b.add(0, 0, 2.0);
    b.add(0, 1, 0.5);
    b.add(1, 0, 1.5);
    const CsrMatrix a = std::move(b).build();
    CHECK(a.nonzeros() == 3);
    CHECK(a.at(0, 0) == 2.0);
    CHECK(a.at(0, 1) == 1.5);
    CHECK(a.at(1, 1) == 0.0);
    CHECK(a.col[0] == 0);
    CHECK(a.is_symmetric());
  }

  TEST_CASE("multiply and symmetry check") {
    const CsrMatrix a = tridiagonal(4);
    const std::vector<double> x{1, 2, 3, 4};
    std::vector<double> y(4);
    a.multiply(x, y);
    CHECK(y == std::vector<double>{0, 0, 0, 5});
    CsrBuilder b(2);
    b.add(0, 1, 1.0);
    CHECK_FALSE(std::move(b).build().is_symmetric());
  }

  TEST_CASE("conjugate gradient solves an SPD system") {
    const std::size_t n = 50;
    const CsrMatrix a = tridiagonal(n);
    std::vector<double> x_true(n), b(n);
    for (std::size_t r = 0; r < n; ++r) x_true[r] = std::sin(0.3 * static_cast<double>(r)) + 2.0;
    a.multiply(x_true, b);
    for (const bool jacobi : {false, true}) {
      const CgResult res = conjugate_gradient(a, b, {1e-12, 1000, jacobi});
      CHECK(res.converged);
      CHECK(res.relative_residual <= 1e-12);
      for (std::size_t r = 0; r < n; ++r) CHECK(res.x[r] == doctest::Approx(x_true[r]).epsilon(1e-9));
    }
  }

  TEST_CASE("zero right-hand side returns zero immediately") {
    const CgResult res = conjugate_gradient(tridiagonal(5), std::vector<double>(5, 0.0), {});
    CHECK(res.converged);
    CHECK(res.iterations == 0);
    CHECK(res.x == std::vector<double>(5, 0.0));
  }

  TEST_CASE("iteration cap reports non-convergence") {
    std::vector<double> b(100, 1.0);
    const CgResult res = conjugate_gradient(tridiagonal(100), b, {1e-14, 3, false});
    CHECK_FALSE(res.converged);
    CHECK(res.iterations == 3);
    CHECK(res.relative_residual > 1e-14);
  }

  TEST_CASE("reference norm scales the stopping target") {
    const CsrMatrix a = tridiagonal(30);
    std::vector<double> b(30, 1.0);
    const CgResult loose = conjugate_gradient(a, b, {1e-6, 1000, false});
    const CgResult strict = conjugate_gradient(a, b, {1e-6, 1000, false}, 1e-4);
    CHECK(loose.converged);
    CHECK(strict.converged);
    std::vector<double> r(30);
    a.multiply(strict.x, r);
    double norm = 0.0;
    for (std::size_t i = 0; i < 30; ++i) norm += (b[i] - r[i]) * (b[i] - r[i]);
    CHECK(std::sqrt(norm) <= 1e-10 * 1.0001);
  }
}
