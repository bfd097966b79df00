#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "qconv/fusion_ring.hpp"
#include "qconv/json_io.hpp"
#include "qconv/rng.hpp"

using namespace qconv;
using namespace qconv::test;

namespace {
FusionRing ring(const std::string& name) {
  return parse_ring(load_json_file(fixture_path(name + ".json")));
}

const char* kCategorifiable[] = {"z2", "z3", "z4", "z2xz2", "s3", "fibonacci", "ising"};

CVector random_unit(int n, CounterRng& rng) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.next_cgaussian();
  return v / v.norm();
}
}  // namespace

TEST_CASE("all bundled rings validate") {
  for (auto name : {"z2", "z3", "z4", "z2xz2", "s3", "fibonacci", "ising", "obstructed"}) {
    RingValidation v = validate(ring(name));
    CHECK_MESSAGE(v.valid, name);
    CHECK(v.failures.empty());
  }
}

TEST_CASE("single-coefficient mutations are rejected with a true failing identity") {
  CounterRng rng(41, 0);
  for (auto name : kCategorifiable) {
    FusionRing R = ring(name);
    int rejected = 0;
    for (int m = 0; m < 25; ++m) {
      FusionRing M = R;
      // redraw until the mutation actually breaks an axiom
      for (int attempt = 0; attempt < 200; ++attempt) {
        M = R;
        int k = static_cast<int>(rng.next_u64() % M.rank);
        int j = static_cast<int>(rng.next_u64() % M.rank);
        int i = static_cast<int>(rng.next_u64() % M.rank);
        long long delta = 1 + static_cast<long long>(rng.next_u64() % 3);
        M.at(k, j, i) += delta;
        if (!validate(M).valid) break;
      }
      RingValidation v = validate(M);
      REQUIRE_FALSE(v.valid);
      REQUIRE_FALSE(v.failures.empty());
      // the reported identity must really fail on the mutated ring
      CHECK_FALSE(identity_holds(M, v.failures.front()));
      // and hold on the original
      CHECK(identity_holds(R, v.failures.front()));
      ++rejected;
    }
    CHECK(rejected == 25);
  }
}

TEST_CASE("shape errors throw instead of reporting failures") {
  FusionRing R = ring("z3");
  R.dual = {0, 1};  // wrong length
  CHECK_THROWS_AS(validate(R), InvalidInput);
  FusionRing Q = ring("z3");
  Q.N.pop_back();
  CHECK_THROWS_AS(validate(Q), InvalidInput);
}

TEST_CASE("Frobenius-Perron dimensions of the bundled rings") {
  auto fib = fp_dimensions(ring("fibonacci"));
  REQUIRE(fib.size() == 2);
  CHECK(fib[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fib[1] == doctest::Approx(kGolden).epsilon(1e-10));
  auto isg = fp_dimensions(ring("ising"));
  REQUIRE(isg.size() == 3);
  CHECK(isg[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(isg[1] == doctest::Approx(kSqrt2).epsilon(1e-10));
  CHECK(isg[2] == doctest::Approx(1.0).epsilon(1e-10));
  for (double d : fp_dimensions(ring("s3"))) CHECK(d == doctest::Approx(1.0));
  // the identification with the spectral norm is part of the contract
  for (auto name : kCategorifiable) {
    FusionRing R = ring(name);
    auto ds = fp_dimensions(R);
    auto Ms = fusion_matrices(R);
    for (size_t k = 0; k < Ms.size(); ++k)
      CHECK(std::abs(ds[k] - spectral_norm(Ms[k].cast<std::complex<double>>())) <=
            1e-9);
  }
}

TEST_CASE("fusion matrices transpose across duals") {
  for (auto name : {"s3", "ising", "obstructed"}) {
    FusionRing R = ring(name);
    auto Ms = fusion_matrices(R);
    for (int k = 0; k < R.rank; ++k)
      CHECK((Ms[R.dual[k]] - Ms[k].transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("criterion operator is Hermitian and PSD on categorifiable rings") {
  CounterRng rng(42, 0);
  for (auto name : {"z4", "fibonacci", "ising"}) {
    FusionRing R = ring(name);
    for (int it = 0; it < 50; ++it) {
      CVector v = random_unit(R.rank, rng);
      CMatrix T = criterion_T(R, v);
      CHECK(max_abs(T - T.adjoint()) < 1e-10 * (1.0 + max_abs(T)));
      CHECK(min_eigenvalue((T + T.adjoint()) * 0.5) > -1e-9);
    }
  }
}

TEST_CASE("schur values stay nonnegative on categorifiable rings") {
  CounterRng rng(43, 0);
  for (auto name : kCategorifiable) {
    FusionRing R = ring(name);
    for (int it = 0; it < 200; ++it) {
      CVector a = random_unit(R.rank, rng), b = random_unit(R.rank, rng),
              c = random_unit(R.rank, rng);
      CHECK(schur_value(R, a, b, c) >= -1e-9);
    }
  }
}

TEST_CASE("the obstructed ring is certified with the frozen minimum") {
  CriterionReport r = search_comult_violation(ring("obstructed"), 64, 1);
  CHECK(r.verdict == CriterionVerdict::violation);
  CHECK(r.best_value == doctest::Approx(-0.833575999390607).epsilon(1e-9));
  CHECK(r.hermiticity_residual < 1e-10);
  CHECK(r.eigen_residual < 1e-8);
  CHECK(std::abs(r.witness.norm() - 1.0) < 1e-9);
  // the witness re-certifies on a fresh evaluation
  CMatrix T = criterion_T(ring("obstructed"), r.witness);
  CHECK(min_eigenvalue((T + T.adjoint()) * 0.5) ==
        doctest::Approx(r.best_value).epsilon(1e-9));
}

TEST_CASE("no violations are reported on categorifiable rings") {
  for (auto name : kCategorifiable) {
    CriterionReport r = search_comult_violation(ring(name), 24, 1);
    CHECK_MESSAGE(r.verdict == CriterionVerdict::pass, name);
    CHECK(r.best_value > -1e-7);
  }
}

TEST_CASE("search is deterministic in (budget, seed)") {
  CriterionReport a = search_comult_violation(ring("obstructed"), 32, 9);
  CriterionReport b = search_comult_violation(ring("obstructed"), 32, 9);
  CHECK(a.best_value == b.best_value);
  CHECK(max_abs(CMatrix(a.witness - b.witness)) == 0.0);
}

TEST_CASE("product-vector minimum separates the two criteria") {
  // the 4x4 partial swap: not PSD, yet nonnegative on product vectors
  CMatrix M = CMatrix::Identity(4, 4);
  M(1, 1) = 0;
  M(2, 2) = 0;
  M(1, 2) = 1;
  M(2, 1) = 1;
  CHECK(min_eigenvalue(M) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(product_vector_min(M, 2, 2, 64, 1) >= -1e-9);
  // sanity: the bound is not vacuous
  CMatrix neg = -CMatrix::Identity(4, 4);
  CHECK(product_vector_min(neg, 2, 2, 16, 1) == doctest::Approx(-1.0).epsilon(1e-9));
}
