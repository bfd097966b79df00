#ifndef QCONV_CONVOLUTION_HPP
#define QCONV_CONVOLUTION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qconv/algebra.hpp"
#include "qconv/fusion_ring.hpp"
#include "qconv/groups.hpp"

namespace qconv {

// Bilinear convolution in trace-orthonormal coordinates:
// (x * y)_c = sum_{a,b} x_a y_b tensor[a,b,c]. The comultiplication is the
// dual map under <x,y> = tau(y^* x): Delta(z)_{ab} = sum_c z_c conj(tensor[a,b,c]).
struct ConvolutionStructure {
  SpecPtr spec;
  double k = 1.0;
  std::vector<std::complex<double>> tensor;  // dense, index (a*D + b)*D + c

  std::complex<double> at(int a, int b, int c) const {
    int D = spec->coord_dim();
    return tensor[(static_cast<size_t>(a) * D + b) * D + c];
  }
  std::complex<double>& at(int a, int b, int c) {
    int D = spec->coord_dim();
    return tensor[(static_cast<size_t>(a) * D + b) * D + c];
  }
};

// The algebra M (x) M: block (i, j) has size n_i n_j and weight
// delta_i delta_j; pair_index maps a coordinate pair of M to the coordinate
// of the product basis element e_a (x) e_b.
struct TensorSquareMap {
  SpecPtr sq_spec;
  std::vector<int> pair_index;  // size D*D, index a*D + b
  int D = 0;

  int pair(int a, int b) const { return pair_index[static_cast<size_t>(a) * D + b]; }
};

TensorSquareMap tensor_square(const SpecPtr& spec);

Element convolve(const ConvolutionStructure& S, const Element& x, const Element& y);
CVector convolve_coords(const ConvolutionStructure& S, const CVector& x,
                        const CVector& y);

// x (x) y as an element of the tensor-square algebra
Element tensor_embed(const TensorSquareMap& sq, const Element& x, const Element& y);

// Delta(z) as an element of the tensor-square algebra
Element comultiply(const ConvolutionStructure& S, const TensorSquareMap& sq,
                   const Element& z);

// rho(x)_i = V_i x_{perm(i)}^T V_i^*: a trace-preserving anti-*-isomorphism
// when perm matches block data and every V_i is unitary.
struct Antipode {
  std::vector<int> perm;
  std::vector<CMatrix> unitary;
};

Element apply_antipode(const Antipode& rho, const Element& x);

struct CheckOptions {
  int samples = 200;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int threads = 1;
};

struct AxiomVerdict {
  std::string name;
  bool pass = true;
  double worst_slack = 0.0;  // max violation over samples; <= tol passes
  std::string note;
};

struct AxiomReport {
  std::vector<AxiomVerdict> verdicts;
  bool all_pass = true;
  double tol = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;

  const AxiomVerdict* find(const std::string& name) const;
  void add(AxiomVerdict v);
};

// Samples are normalized so the stated tolerance is on the sample scale.
// Verdicts: positivity, young_primary, haar, unitality, comult_positivity.
// On commutative algebras comult_positivity is decided exactly on the
// minimal projections (noted in the verdict); otherwise it is sampled.
AxiomReport check_good_convolution(const ConvolutionStructure& S,
                                   const CheckOptions& opt = {});

AxiomVerdict check_associativity(const ConvolutionStructure& S,
                                 const CheckOptions& opt = {});

// tau((x*y) z) = tau((rho(z)*x) rho(y)) over sampled triples
AxiomVerdict check_frobenius(const ConvolutionStructure& S, const Antipode& rho,
                             const CheckOptions& opt = {});

// antipode_structure, antipode_antimultiplicative, antipode_star,
// antipode_trace, antipode_pnorm (p in {1/2, 1, 2, 5, inf})
AxiomReport check_antipode(const ConvolutionStructure& S, const Antipode& rho,
                           const CheckOptions& opt = {});

struct FNAlgebra {
  ConvolutionStructure S;
  Antipode rho;
  AxiomReport report;  // verification evidence gathered at assembly
};

// Runs the good-convolution, Frobenius, and antipode checks and throws
// BuildError naming the first failing axiom. Associativity is not an axiom
// of the structure and is checked separately where it is expected to hold.
FNAlgebra assemble_fn_algebra(ConvolutionStructure S, Antipode rho,
                              const CheckOptions& opt = {});

// Group algebra of a validated table: |G| one-dimensional blocks with
// counting trace, (f*g)(s) = sum_t f(t) g(t^{-1} s), rho(f)(s) = f(s^{-1}),
// k = 1. The *_structure / *_antipode forms return the raw data without the
// axiom gate so checkers can report on it verdict by verdict.
ConvolutionStructure group_structure(const GroupTable& G);
Antipode group_antipode(const GroupTable& G);
FNAlgebra build_group_algebra(const GroupTable& G, const CheckOptions& opt = {});

// x*y = Tr_2(U (x (x) y) U^*) on a single n x n block with weight 1, from a
// unitary U on C^n (x) C^n; the dual comultiplication is z -> U^*(z (x) I)U.
ConvolutionStructure build_unitary_convolution(const CMatrix& U, int n);

// U = sqrt(theta) I + i sqrt(1-theta) S with S the tensor swap. On trace-one
// positives: x*y = theta x + (1-theta) y - i sqrt(theta(1-theta)) [x, y].
ConvolutionStructure build_theta_swap(double theta, int n);

// Closed form of the theta-swap convolution, used as an independent oracle.
CMatrix theta_swap_closed_form(double theta, const CMatrix& x, const CMatrix& y);

// Commutative fusion ring -> functions on rank points with weights d(x_i)^2
// (minimal-projection data read off a simultaneous unitary diagonalization
// of the fusion matrices), convolution pulled back through the transform,
// antipode = dual involution, k = 1.
std::pair<ConvolutionStructure, Antipode> fusion_bialgebra_parts(const FusionRing& R);
FNAlgebra build_fusion_bialgebra(const FusionRing& R, const CheckOptions& opt = {});

// tau -> tau/lam1 and * -> */lam2 turn an FN k-algebra into an FN
// (lam1 k / lam2)-algebra; coordinates are rebased to the new weights.
ConvolutionStructure rescale_structure(const ConvolutionStructure& S, double lam1,
                                       double lam2);

// Deterministic parallel loop: body(i) runs for i in [0, n); results must be
// written to per-index slots. thread count never changes the outcome.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace qconv

#endif
