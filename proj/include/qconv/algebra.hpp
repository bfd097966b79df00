#ifndef QCONV_ALGEBRA_HPP
#define QCONV_ALGEBRA_HPP

#include <memory>
#include <vector>

#include "qconv/linalg.hpp"
#include "qconv/rng.hpp"

namespace qconv {

struct BlockDim {
  int n = 1;           // matrix size of the block
  double delta = 1.0;  // trace weight: tau restricted to the block is delta * Tr
};

// A finite direct sum of matrix blocks M = (+)_i M_{n_i} with the weighted
// trace tau(x) = sum_i delta_i Tr(x_i). Coordinates refer to the
// trace-orthonormal basis {delta_i^{-1/2} E^{(i)}_{st}} ordered
// lexicographically by (block, row, col).
class AlgebraSpec {
 public:
  explicit AlgebraSpec(std::vector<BlockDim> blocks);

  const std::vector<BlockDim>& blocks() const { return blocks_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int coord_dim() const { return coord_dim_; }       // D = sum n_i^2
  double fp_dim() const { return fp_dim_; }          // tau(I) = sum delta_i n_i
  double min_proj_trace() const { return lambda_; }  // min_i delta_i
  bool commutative() const { return commutative_; }
  int coord_offset(int block) const { return offsets_[block]; }
  // global coordinate of entry (s, t) of block i
  int coord_index(int i, int s, int t) const {
    return offsets_[i] + s * blocks_[i].n + t;
  }

  bool operator==(const AlgebraSpec& o) const;

 private:
  std::vector<BlockDim> blocks_;
  std::vector<int> offsets_;
  int coord_dim_ = 0;
  double fp_dim_ = 0.0;
  double lambda_ = 0.0;
  bool commutative_ = true;
};

using SpecPtr = std::shared_ptr<const AlgebraSpec>;

SpecPtr make_spec(std::vector<BlockDim> blocks);

struct Element {
  SpecPtr spec;
  std::vector<CMatrix> block;

  static Element zero(const SpecPtr& spec);
  static Element identity(const SpecPtr& spec);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(std::complex<double> c);
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator*(std::complex<double> c, Element a);

void require_same_spec(const Element& a, const Element& b, const char* where);

std::complex<double> trace(const Element& x);  // tau
// <x, y> = tau(y^* x)
std::complex<double> inner(const Element& x, const Element& y);
Element adjoint(const Element& x);
Element mul(const Element& x, const Element& y);  // blockwise algebra product
double max_abs(const Element& x);

// ||x||_p = tau(|x|^p)^{1/p} for p in (0, inf]; p = inf is the operator norm.
// Values of p below 1 give the same formula (a quasi-norm).
double p_norm(const Element& x, double p);
double p_dist(const Element& x, const Element& y, double p);

// tau(-x log x) with 0 log 0 = 0. Requires x PSD within the clamp tolerance.
double entropy(const Element& x);

// Spectral projection onto eigenvalues > rank_tol * ||x||_inf of a PSD x.
Element range_projection(const Element& x, double rank_tol = 1e-8);
// S(x) = tau(range_projection(x))
double support(const Element& x, double rank_tol = 1e-8);

// x -> (target / tau(x)) x. Requires tau(x) real positive.
Element normalize_trace(const Element& x, double target);

Element random_element(const SpecPtr& spec, CounterRng& rng);    // iid gaussian entries
Element random_hermitian(const SpecPtr& spec, CounterRng& rng);  // g + g^*
Element random_positive(const SpecPtr& spec, CounterRng& rng);   // g g^*

// PSD part: eigenvalues clamped at 0 (no tolerance restriction).
Element psd_clamp(const Element& x);

// power x^a of a PSD element
Element psd_power(const Element& x, double a);

CVector coords(const Element& x);
Element from_coords(const SpecPtr& spec, const CVector& c);

// eigenvalues of a Hermitian element, weighted per block, sorted descending
// together with their block weights: pairs (lambda_j, delta_of_block)
std::vector<std::pair<double, double>> weighted_spectrum(const Element& x);

}  // namespace qconv

#endif
