#ifndef QCONV_LINALG_HPP
#define QCONV_LINALG_HPP

#include <Eigen/Dense>
#include <functional>

#include "qconv/errors.hpp"

namespace qconv {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Absolute tolerances are taken on the max-entry scale: tol * (1 + max|A_ij|).
inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

double max_abs(const CMatrix& A);

bool is_hermitian(const CMatrix& A, double tol = kHermTol);

struct EigH {
  RVector values;   // ascending
  CMatrix vectors;  // columns match values
};

// Throws NumericError if A is not Hermitian within kHermTol on the entry scale.
EigH eig_hermitian(const CMatrix& A);

CMatrix kron(const CMatrix& A, const CMatrix& B);

// M acts on C^{n1} (x) C^{n2} with index (i, j) -> i*n2 + j. Returns the
// n1 x n1 matrix out(i, i') = sum_j M(i*n2+j, i'*n2+j).
CMatrix partial_trace_second(const CMatrix& M, int n1, int n2);

// Separate trace over the first factor, used by oracles and checks.
CMatrix partial_trace_first(const CMatrix& M, int n1, int n2);

// f applied to the spectrum of a Hermitian PSD matrix. Eigenvalues in
// [-tol, 0) are clamped to 0; anything below -tol is a hard error.
CMatrix matrix_function(const CMatrix& A, const std::function<double(double)>& f);

double spectral_norm(const CMatrix& A);

struct PerronResult {
  double value = 0.0;        // spectral radius, a real eigenvalue for M >= 0
  RVector vector;            // entrywise nonnegative, unit 2-norm
  bool irreducible = false;  // connectivity of the graph of M + M^T
  double residual = 0.0;     // ||M v - value v||_2
};

// Perron data of an entrywise nonnegative real matrix, taken from the full
// spectrum (never a power iteration). The eigen-equation residual is
// guaranteed small only in the irreducible case.
PerronResult perron_eigen(const RMatrix& M);

double min_eigenvalue(const CMatrix& A);  // Hermitian input

}  // namespace qconv

#endif
