#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "qconv/algebra.hpp"

using namespace qconv;
using namespace qconv::test;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

SpecPtr mixed_spec() { return make_spec({{2, 0.5}, {1, 2.0}, {3, 1.0}}); }

SpecPtr comm_spec() { return make_spec({{1, 1.0}, {1, 2.5}, {1, 0.25}}); }
}  // namespace

TEST_CASE("spec invariants") {
  auto s = mixed_spec();
  CHECK(s->coord_dim() == 4 + 1 + 9);
  CHECK(s->fp_dim() == doctest::Approx(2 * 0.5 + 1 * 2.0 + 3 * 1.0));
  CHECK(s->min_proj_trace() == doctest::Approx(0.5));
  CHECK_FALSE(s->commutative());
  CHECK(comm_spec()->commutative());
  CHECK(s->coord_index(2, 1, 2) == 5 + 1 * 3 + 2);
  CHECK_THROWS_AS(make_spec({}), InvalidInput);
  CHECK_THROWS_AS(make_spec({{0, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(make_spec({{2, -1.0}}), InvalidInput);
}

TEST_CASE("coords round trip and are trace-orthonormal") {
  auto s = mixed_spec();
  CounterRng rng(3, 0);
  Element x = random_element(s, rng);
  Element back = from_coords(s, coords(x));
  CHECK(max_abs(back - x) < 1e-14);
  // <x, y> equals the euclidean inner product of coordinates
  Element y = random_element(s, rng);
  std::complex<double> lhs = inner(x, y);
  std::complex<double> rhs = coords(y).dot(coords(x));  // conjugates y
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("trace, adjoint, multiplication") {
  auto s = mixed_spec();
  CounterRng rng(4, 0);
  Element x = random_element(s, rng), y = random_element(s, rng);
  CHECK(std::abs(trace(mul(x, y)) - trace(mul(y, x))) < 1e-12);
  CHECK(max_abs(adjoint(adjoint(x)) - x) < 1e-14);
  CHECK(max_abs(adjoint(mul(x, y)) - mul(adjoint(y), adjoint(x))) < 1e-12);
  CHECK(std::abs(trace(Element::identity(s)).real() - s->fp_dim()) < 1e-12);
}

TEST_CASE("p_norm agrees with the plain-vector oracle on commutative specs") {
  auto s = comm_spec();
  CounterRng rng(5, 0);
  for (int i = 0; i < 200; ++i) {
    Element x = random_element(s, rng);
    VecView v = vec_view(x);
    for (double p : {0.5, 1.0, 1.7, 2.0, 3.0, kInf}) {
      double a = p_norm(x, p), b = vec_p_norm(v, p);
      CHECK(std::abs(a - b) <= 1e-10 * (1.0 + b));
    }
    CHECK(std::abs(trace(x) - vec_trace(v)) < 1e-12);
  }
}

TEST_CASE("p_norm agrees with singular values on a full matrix block") {
  auto s = make_spec({{3, 1.0}});
  CounterRng rng(6, 0);
  for (int i = 0; i < 100; ++i) {
    Element x = random_element(s, rng);
    for (double p : {1.0, 2.0, 3.5, kInf}) {
      double a = p_norm(x, p), b = oracle_svd_p_norm(x.block[0], p);
      CHECK(std::abs(a - b) <= 1e-10 * (1.0 + b));
    }
  }
}

TEST_CASE("p_norm satisfies the triangle inequality and homogeneity for p >= 1") {
  auto s = mixed_spec();
  CounterRng rng(7, 0);
  for (int i = 0; i < 50; ++i) {
    Element x = random_element(s, rng), y = random_element(s, rng);
    for (double p : {1.0, 1.5, 2.0, 4.0, kInf}) {
      CHECK(p_norm(x + y, p) <= p_norm(x, p) + p_norm(y, p) + 1e-10);
      CHECK(std::abs(p_norm(std::complex<double>(3.0, 0.0) * x, p) - 3.0 * p_norm(x, p)) <
            1e-9);
    }
    // Hoelder at (2, 2)
    CHECK(std::abs(trace(mul(x, y))) <= p_norm(x, 2.0) * p_norm(y, 2.0) + 1e-10);
  }
  CHECK_THROWS_AS(p_norm(Element::identity(s), 0.0), InvalidInput);
}

TEST_CASE("entropy of uniform and pure densities") {
  auto s = mixed_spec();
  double d = s->fp_dim();
  Element u = normalize_trace(Element::identity(s), 1.0);
  CHECK(entropy(u) == doctest::Approx(std::log(d)).epsilon(1e-12));
  // a minimal projection normalized to trace 1 has entropy -log of its height
  auto c = comm_spec();
  Element e = Element::zero(c);
  e.block[0](0, 0) = 1.0;  // weight-1 block: a density with H = 0
  CHECK(entropy(e) == doctest::Approx(0.0).epsilon(1e-12));
  CounterRng rng(8, 0);
  for (int i = 0; i < 100; ++i) {
    Element x = normalize_trace(random_positive(c, rng), 1.0);
    CHECK(std::abs(entropy(x) - vec_entropy(vec_view(x))) < 1e-10);
  }
  CHECK_THROWS_AS(entropy(std::complex<double>(-1.0, 0.0) * u), NumericError);
}

TEST_CASE("normalize_trace and its failure modes") {
  auto s = mixed_spec();
  CounterRng rng(9, 0);
  Element x = random_positive(s, rng);
  Element y = normalize_trace(x, 2.5);
  CHECK(std::abs(trace(y).real() - 2.5) < 1e-12);
  CHECK_THROWS_AS(normalize_trace(Element::zero(s), 1.0), NumericError);
  Element h = random_element(s, rng);
  Element skew = h - adjoint(h);  // trace purely imaginary
  if (std::abs(trace(skew)) > 1e-10) CHECK_THROWS_AS(normalize_trace(skew, 1.0), NumericError);
}

TEST_CASE("range projection, support, psd_clamp, psd_power") {
  auto c = comm_spec();  // weights 1, 2.5, 0.25
  Element x = element_from_values(c, {2.0, 0.0, 1.0});
  Element r = range_projection(x);
  CHECK(max_abs(r - element_from_values(c, {1.0, 0.0, 1.0})) < 1e-12);
  CHECK(support(x) == doctest::Approx(1.0 + 0.25).epsilon(1e-12));
  Element neg = element_from_values(c, {1.0, -3.0, 0.5});
  Element cl = psd_clamp(neg);
  CHECK(max_abs(cl - element_from_values(c, {1.0, 0.0, 0.5})) < 1e-12);
  auto s = mixed_spec();
  CounterRng rng(10, 0);
  Element p = random_positive(s, rng);
  Element root = psd_power(p, 0.5);
  CHECK(max_abs(mul(root, root) - p) < 1e-9 * (1.0 + max_abs(p)));
}

TEST_CASE("weighted_spectrum is sorted with block weights attached") {
  auto c = comm_spec();
  Element x = element_from_values(c, {0.5, 2.0, -1.0});
  auto sp = weighted_spectrum(x);
  REQUIRE(sp.size() == 3);
  CHECK(sp[0].first == doctest::Approx(2.0));
  CHECK(sp[0].second == doctest::Approx(2.5));
  CHECK(sp[2].first == doctest::Approx(-1.0));
  CHECK(sp[2].second == doctest::Approx(0.25));
}

TEST_CASE("random generators: determinism, hermiticity, positivity") {
  auto s = mixed_spec();
  CounterRng a(21, 5), b(21, 5);
  CHECK(max_abs(random_element(s, a) - random_element(s, b)) == 0.0);
  CounterRng rng(22, 0);
  Element h = random_hermitian(s, rng);
  CHECK(max_abs(h - adjoint(h)) < 1e-14);
  Element p = random_positive(s, rng);
  for (auto& [lam, w] : weighted_spectrum(p)) CHECK(lam >= -1e-12);
}

TEST_CASE("mismatched specs are rejected") {
  auto s1 = mixed_spec();
  auto s2 = comm_spec();
  CHECK_THROWS_AS(Element::identity(s1) + Element::identity(s2), InvalidInput);
}
