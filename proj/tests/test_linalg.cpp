#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "qconv/linalg.hpp"
#include "qconv/rng.hpp"

using namespace qconv;
using std::complex;

namespace {
CMatrix random_cmatrix(int n, CounterRng& rng) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.next_cgaussian();
  return m;
}
}  // namespace

TEST_CASE("kron matches the index convention (i,j) -> i*n2 + j") {
  CMatrix A(2, 2), B(2, 2);
  A << 1, 2, 3, 4;
  B << 0, 5, 6, 7;
  CMatrix K = kron(A, B);
  REQUIRE(K.rows() == 4);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j2 = 0; j2 < 2; ++j2)
          CHECK(K(i1 * 2 + i2, j1 * 2 + j2) == A(i1, j1) * B(i2, j2));
}

TEST_CASE("partial traces invert tensoring") {
  CounterRng rng(11, 0);
  CMatrix A = random_cmatrix(3, rng), B = random_cmatrix(2, rng);
  CMatrix K = kron(A, B);
  CHECK(max_abs(partial_trace_second(K, 3, 2) - B.trace() * A) < 1e-12);
  CHECK(max_abs(partial_trace_first(K, 3, 2) - A.trace() * B) < 1e-12);
  CHECK_THROWS_AS(partial_trace_second(K, 4, 2), InvalidInput);
}

TEST_CASE("eig_hermitian reconstructs and orders ascending") {
  CounterRng rng(12, 0);
  CMatrix g = random_cmatrix(4, rng);
  CMatrix h = g + g.adjoint();
  EigH e = eig_hermitian(h);
  CMatrix rec =
      e.vectors * e.values.cast<complex<double>>().asDiagonal() * e.vectors.adjoint();
  CHECK(max_abs(rec - h) < 1e-10);
  for (int i = 0; i + 1 < e.values.size(); ++i) CHECK(e.values[i] <= e.values[i + 1]);
  CHECK_THROWS_AS(eig_hermitian(g + CMatrix::Identity(4, 4)), NumericError);
}

TEST_CASE("matrix_function applies to the spectrum") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  CMatrix r = matrix_function(d, [](double t) { return std::sqrt(t); });
  CHECK(std::abs(r(0, 0) - complex<double>(2.0)) < 1e-12);
  CHECK(std::abs(r(1, 1) - complex<double>(3.0)) < 1e-12);
  // clamp of slightly negative eigenvalues, hard error below tolerance
  CMatrix tiny = -1e-12 * CMatrix::Identity(2, 2);
  CHECK(max_abs(matrix_function(tiny, [](double t) { return t; })) < 1e-11);
  CMatrix bad = -1.0 * CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(matrix_function(bad, [](double t) { return std::sqrt(t); }),
                  NumericError);
}

TEST_CASE("spectral_norm and min_eigenvalue on known matrices") {
  CMatrix m(2, 2);
  m << 3, 0, 0, -5;
  CHECK(spectral_norm(m) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(min_eigenvalue(m) == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("perron_eigen on the Fibonacci matrix gives the golden ratio") {
  RMatrix M(2, 2);
  M << 0, 1, 1, 1;
  PerronResult p = perron_eigen(M);
  CHECK(p.value == doctest::Approx(1.6180339887498949).epsilon(1e-12));
  CHECK(p.irreducible);
  CHECK(p.residual < 1e-10);
  for (int i = 0; i < 2; ++i) CHECK(p.vector[i] >= 0.0);
  RMatrix neg(1, 1);
  neg << -1;
  CHECK_THROWS_AS(perron_eigen(neg), InvalidInput);
}

TEST_CASE("partial swap matrix has minimal eigenvalue -1") {
  CMatrix M = CMatrix::Identity(4, 4);
  M(1, 1) = 0;
  M(2, 2) = 0;
  M(1, 2) = 1;
  M(2, 1) = 1;
  CHECK(min_eigenvalue(M) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("CounterRng is a pure function of seed, stream, index") {
  CounterRng a(42, 7), b(42, 7), c(42, 8);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    std::uint64_t ua = a.next_u64(), ub = b.next_u64(), uc = c.next_u64();
    all_equal = all_equal && ua == ub;
    any_diff = any_diff || ua != uc;
  }
  CHECK(all_equal);
  CHECK(any_diff);
  CounterRng d(1, 0);
  for (int i = 0; i < 1000; ++i) {
    double u = d.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // loose moment check on the gaussian
  CounterRng e(2, 0);
  double s1 = 0, s2 = 0;
  int n = 20000;
  for (int i = 0; i < n; ++i) {
    double g = e.next_gaussian();
    s1 += g;
    s2 += g * g;
  }
  CHECK(std::abs(s1 / n) < 0.05);
  CHECK(std::abs(s2 / n - 1.0) < 0.05);
}
