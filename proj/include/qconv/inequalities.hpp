#ifndef QCONV_INEQUALITIES_HPP
#define QCONV_INEQUALITIES_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qconv/convolution.hpp"

namespace qconv {

struct SweepConfig {
  std::vector<double> p_grid = {1.0, 1.5, 2.0, 3.0,
                                std::numeric_limits<double>::infinity()};
  int samples = 500;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int threads = 1;
};

// Exponent pair from the grid with 1/p + 1/q in [1, 2] and the derived r
// from 1 + 1/r = 1/p + 1/q (never supplied independently).
struct ExponentTriple {
  double p, q, r;
};

std::vector<ExponentTriple> admissible_pairs(const std::vector<double>& grid);

struct InequalityCase {
  std::vector<std::pair<std::string, double>> params;
  std::vector<Element> witness;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // positive = violation by that amount; see note for scale
  std::string note;
};

struct InequalityReport {
  std::string suite;
  bool pass = true;
  double worst_slack = -std::numeric_limits<double>::infinity();
  double tol = 1e-9;
  int samples = 0;
  std::uint64_t seed = 0;
  int cases_checked = 0;
  std::string semantics;  // what pass means for this suite
  std::optional<InequalityCase> worst;  // re-evaluates to worst_slack within 1e-12
  std::optional<double> equality_ratio;  // young: best ratio over structured pairs
};

// max over the grid and samples of ||x*y||_r / (k ||x||_p ||y||_q); pass iff
// <= 1 + tol. Structured pairs (convolution unit, minimal projections on
// commutative algebras, identity) witness the equality cases.
InequalityReport young_sweep(const ConvolutionStructure& S, const SweepConfig& cfg = {});

// ||sum_i x_i * y_i||_r <= k ||sum_j e^{2 pi i j t} x_j||_p ||sum_l e^{-2 pi i l t} y_l||_q
// must hold at some phase t; checked against the best point of a uniform
// grid on [0, 1) (existence form, so the bound is the grid maximum).
InequalityReport phase_young_check(const ConvolutionStructure& S,
                                   const std::vector<Element>& xs,
                                   const std::vector<Element>& ys, double p, double q,
                                   int t_grid_size = 128, double tol = 1e-9);

// ||x^r * y^r||_r >= lambda^{1/r - r} k ||x||_t^r ||y||_s^r for PSD x, y and
// 0 < r, s, t <= 1 with 1 + 1/r = 1/s + 1/t; lambda = smallest block weight.
// Slack is normalized by max(1, rhs).
InequalityReport reverse_young2_check(const ConvolutionStructure& S, const Element& x,
                                      const Element& y, double r, double s, double t,
                                      double tol = 1e-9);

// S(R(x) * R(y)) >= max{S(x), S(y)} for PSD x, y, where R is the range
// projection at rank_tol and S = tau(R(.)).
InequalityReport sumset_check(const ConvolutionStructure& S, const Element& x,
                              const Element& y, double rank_tol = 1e-8,
                              double tol = 1e-9);

// H(x*y) >= max{H(x), H(y)} for PSD x, y with tau(x) = tau(y) = 1/k (the
// theta in {0,1} endpoints; intermediate theta follows by convexity). With
// an explicit theta the right side is theta H(x) + (1-theta) H(y), the form
// that survives on structures where the endpoint version fails.
InequalityReport qeci_check(const ConvolutionStructure& S, const Element& x,
                            const Element& y,
                            std::optional<double> theta = std::nullopt,
                            double tol = 1e-9);

// H of the triple convolution (order 0: (x1*x2)*x3, order 1: x1*(x2*x3))
// against max{H(x1), H(x2), H(x3)}; inputs trace-normalized to 1/k.
InequalityReport qeci_triple_check(const ConvolutionStructure& S, const Element& x1,
                                   const Element& x2, const Element& x3,
                                   int association_order, double tol = 1e-9);

// Best-found value of sup{H(y) : y >= 0, ||y - x||_p <= eps} by projected
// gradient ascent with multistart; eps = 0 returns H(x) exactly. The result
// is always >= H(x) and the witness is feasible.
double smooth_entropy(const Element& x, double p, double eps, int budget = 64,
                      std::uint64_t seed = 0, Element* witness = nullptr);

// Best-found UPPER bound on inf{H(z*w) : ||z - x||_p <= eps, ||w - y||_q <= eta}
// over feasible PSD pairs; budget 1 evaluates the seed pair (x, y) only.
// Only upper bounds on the infimum are computable, so downstream tests are
// falsification tests.
double smooth_conv_entropy(const FNAlgebra& F, const Element& x, const Element& y,
                           double p, double q, double eps, double eta,
                           int budget = 64, std::uint64_t seed = 0,
                           Element* witness_z = nullptr, Element* witness_w = nullptr);

// Falsification test of the smooth entropic convolution inequality: searches
// for feasible (z, w) with H(z*w) below
//   theta H_eps^p(x) + (1-theta) H_eta^q(y) - budget(theta, eps, eta)
// at theta in {0, 1/2, 1}, where the budget composes the two continuity
// bounds below with trace bound h = 1/k + d + 1. Pass means no counterexample
// found within budget. Requires eps + eta <= 1/((d+1)(1+k(d+1))).
InequalityReport smooth_qeci_check(const FNAlgebra& F, const Element& x,
                                   const Element& y, double p, double q, double eps,
                                   double eta, int budget = 64,
                                   std::uint64_t seed = 0, double tol = 1e-9);

// |H(x) - H(y)| <= d^{1-1/p} |eps log eps|
//                  + d^{1-1/p} eps (1 + (1-1/p)|log d| + |log d| + 2|log r|)
// for PSD x, y with traces <= h and ||x - y||_p <= eps, where r = 2 h / lambda
// bounds twice the largest eigenvalue.
double continuity_bound(double d, double lambda, double h, double p, double eps);

// |H(z*w) - H(x*y)| bound for ||z-x||_p <= eps, ||w-y||_q <= eta and traces
// <= h: the 1-norm bound eps' = k h (d^{1-1/p} eps + d^{1-1/q} eta) fed into
// continuity_bound with trace bound k h^2. Requires eps + eta <= 1/(k h (d+1)).
double conv_continuity_bound(double d, double lambda, double h, double k, double p,
                             double q, double eps, double eta);

// Returns (|t log t - s log s|, -(t-s) log(t-s) + 2 |log r| (t-s)) for
// 0 <= s <= t <= r with t - s <= r/2; lhs <= rhs by the scalar lemma.
std::pair<double, double> tlogt_bound(double s, double t, double r);

}  // namespace qconv

#endif
