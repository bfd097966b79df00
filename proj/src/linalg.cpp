#include "qconv/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <queue>
#include <sstream>

namespace qconv {

double max_abs(const CMatrix& A) {
  if (A.size() == 0) return 0.0;
  return A.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& A, double tol) {
  if (A.rows() != A.cols()) return false;
  double scale = 1.0 + max_abs(A);
  return max_abs(A - A.adjoint()) <= tol * scale;
}

EigH eig_hermitian(const CMatrix& A) {
  if (A.rows() != A.cols()) throw InvalidInput("eig_hermitian: matrix not square");
  if (!is_hermitian(A)) {
    std::ostringstream os;
    os << "eig_hermitian: input not Hermitian within " << kHermTol
       << " on the entry scale (residual " << max_abs(A - A.adjoint()) << ")";
    throw NumericError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es((A + A.adjoint()) * 0.5);
  if (es.info() != Eigen::Success) throw NumericError("eig_hermitian: solver failed");
  return EigH{es.eigenvalues(), es.eigenvectors()};
}

CMatrix kron(const CMatrix& A, const CMatrix& B) {
  CMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

CMatrix partial_trace_second(const CMatrix& M, int n1, int n2) {
  if (M.rows() != n1 * n2 || M.cols() != n1 * n2)
    throw InvalidInput("partial_trace_second: dimension mismatch");
  CMatrix out = CMatrix::Zero(n1, n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k) out(i, j) += M(i * n2 + k, j * n2 + k);
  return out;
}

CMatrix partial_trace_first(const CMatrix& M, int n1, int n2) {
  if (M.rows() != n1 * n2 || M.cols() != n1 * n2)
    throw InvalidInput("partial_trace_first: dimension mismatch");
  CMatrix out = CMatrix::Zero(n2, n2);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < n1; ++k) out(i, j) += M(k * n2 + i, k * n2 + j);
  return out;
}

CMatrix matrix_function(const CMatrix& A, const std::function<double(double)>& f) {
  EigH eig = eig_hermitian(A);
  double tol = kPsdTol * (1.0 + max_abs(A));
  RVector vals = eig.values;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] < -tol) {
      std::ostringstream os;
      os << "matrix_function: eigenvalue " << vals[i] << " below -" << tol;
      throw NumericError(os.str());
    }
    if (vals[i] < 0.0) vals[i] = 0.0;
    vals[i] = f(vals[i]);
  }
  return eig.vectors * vals.cast<std::complex<double>>().asDiagonal() *
         eig.vectors.adjoint();
}

double spectral_norm(const CMatrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(A);
  return svd.singularValues()(0);
}

PerronResult perron_eigen(const RMatrix& M) {
  if (M.rows() != M.cols()) throw InvalidInput("perron_eigen: matrix not square");
  const int n = static_cast<int>(M.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (M(i, j) < 0.0) throw InvalidInput("perron_eigen: negative entry");

  // connectivity of the undirected graph of M + M^T
  std::vector<int> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v) {
      if (!seen[v] && (M(u, v) > 0.0 || M(v, u) > 0.0)) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
    }
  }
  bool irreducible = (reached == n);

  Eigen::EigenSolver<RMatrix> es(M);
  if (es.info() != Eigen::Success) throw NumericError("perron_eigen: solver failed");
  // For M >= 0 the spectral radius is itself an eigenvalue, so it is the
  // maximal real part over the spectrum.
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;

  PerronResult out;
  out.value = es.eigenvalues()[best].real();
  out.irreducible = irreducible;
  CVector v = es.eigenvectors().col(best);
  // rotate the dominant phase away, then drop residual imaginary parts
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  std::complex<double> ph = v[imax] / std::abs(v[imax]);
  v /= ph;
  RVector rv = v.real();
  if (rv.sum() < 0.0) rv = -rv;
  for (Eigen::Index i = 0; i < rv.size(); ++i)
    if (rv[i] < 0.0 && rv[i] > -1e-12) rv[i] = 0.0;
  rv.normalize();
  out.vector = rv;
  out.residual = (M * rv - out.value * rv).norm();
  if (irreducible) {
    double scale = 1.0 + M.cwiseAbs().maxCoeff();
    if (out.residual > 1e-10 * scale) {
      std::ostringstream os;
      os << "perron_eigen: residual " << out.residual
         << " too large for an irreducible matrix";
      throw NumericError(os.str());
    }
  }
  return out;
}

double min_eigenvalue(const CMatrix& A) { return eig_hermitian(A).values(0); }

}  // namespace qconv
