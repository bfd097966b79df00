#ifndef QCONV_FUSION_RING_HPP
#define QCONV_FUSION_RING_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qconv/linalg.hpp"

namespace qconv {

// Fusion ring on basis x_0 (unit), ..., x_{rank-1}:
// x_k x_j = sum_i N(k, j, i) x_i with nonnegative integer coefficients.
// dual is the 0-indexed involution with x_k^* = x_{dual[k]}.
struct FusionRing {
  int rank = 0;
  std::vector<int> dual;
  std::vector<long long> N;  // index ((k * rank) + j) * rank + i

  long long at(int k, int j, int i) const {
    return N[(static_cast<size_t>(k) * rank + j) * rank + i];
  }
  long long& at(int k, int j, int i) {
    return N[(static_cast<size_t>(k) * rank + j) * rank + i];
  }
};

struct FailedIdentity {
  std::string kind;          // unit | duality | dual_involution | frobenius | associativity | nonnegativity
  std::array<int, 4> idx{};  // meaning depends on kind
  long long lhs = 0;
  long long rhs = 0;
  std::string render() const;
};

struct RingValidation {
  bool valid = true;
  std::vector<FailedIdentity> failures;
  bool truncated = false;  // failure list capped
};

// Exact integer validation of all ring axioms. Never throws on a bad ring;
// shape errors (wrong N size, dual not a permutation) throw InvalidInput.
RingValidation validate(const FusionRing& R);

// Re-evaluates one reported identity on a ring; used to confirm that a
// rejection names an identity that actually fails.
bool identity_holds(const FusionRing& R, const FailedIdentity& id);

// M_k(i, j) = N(k, j, i): the matrix of left multiplication by x_k.
std::vector<RMatrix> fusion_matrices(const FusionRing& R);

// Perron eigenvalues d(x_k) of the fusion matrices. Asserts the numerical
// identification |d(x_k) - ||M_k||| <= 1e-9 for every k.
std::vector<double> fp_dimensions(const FusionRing& R);

// T(v) = sum_k (v^* M_k v / ||M_k||) M_k (x) M_k. Hermitian by the dual
// symmetry M_{k^*} = M_k^T; asserted within 1e-10 on the entry scale.
CMatrix criterion_T(const FusionRing& R, const CVector& v);

// Same operator with Perron weights 1/d(x_k) instead of 1/||M_k||; this is
// the coordinate form of the comultiplication of a positive basis element.
CMatrix delta1_operator(const FusionRing& R, const CVector& v);

// sum_k (1/||M_k||) prod_{s=1}^{3} v_s^* M_k v_s, real part; the imaginary
// part must vanish within 1e-9 on the value scale.
double schur_value(const FusionRing& R, const CVector& v1, const CVector& v2,
                   const CVector& v3);

enum class CriterionVerdict { pass, violation, inconclusive };

struct CriterionReport {
  CriterionVerdict verdict = CriterionVerdict::pass;
  double best_value = 0.0;  // min over visited v of lambda_min(T(v))
  CVector witness;          // unit vector attaining best_value
  double tol = 1e-7;        // violation threshold on -best_value
  int budget = 0;           // starts requested
  int starts_used = 0;
  std::uint64_t seed = 0;
  // certification of the recheck at the witness
  double hermiticity_residual = 0.0;
  double eigen_residual = 0.0;
  bool fallback_used = false;  // simplex fallback triggered near degeneracies
};

// Multistart projected descent of v -> lambda_min(T(v)) on the unit sphere.
// Starts: eigenvectors of every fusion matrix, the Perron vector, then
// seeded random vectors up to the budget. Deterministic in (budget, seed).
CriterionReport search_comult_violation(const FusionRing& R, int budget = 64,
                                        std::uint64_t seed = 0);

// min over unit product vectors v (x) w of <M (v(x)w), v(x)w> for Hermitian M
// on C^{n1} (x) C^{n2}, by alternating minimal-eigenvector descent.
double product_vector_min(const CMatrix& M, int n1, int n2, int budget = 64,
                          std::uint64_t seed = 0);

}  // namespace qconv

#endif
