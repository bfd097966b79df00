#include "qconv/fusion_ring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qconv/rng.hpp"

namespace qconv {

namespace {
constexpr size_t kMaxFailures = 1000;

void check_shape(const FusionRing& R) {
  if (R.rank < 1) throw InvalidInput("fusion ring: rank must be >= 1");
  size_t n = static_cast<size_t>(R.rank);
  if (R.N.size() != n * n * n)
    throw InvalidInput("fusion ring: N must hold rank^3 coefficients");
  if (R.dual.size() != n) throw InvalidInput("fusion ring: dual must list rank entries");
  std::vector<int> seen(R.rank, 0);
  for (int d : R.dual) {
    if (d < 0 || d >= R.rank)
      throw InvalidInput("fusion ring: dual entry out of range");
    if (seen[d]++) throw InvalidInput("fusion ring: dual is not a permutation");
  }
}
}  // namespace

std::string FailedIdentity::render() const {
  std::ostringstream os;
  if (kind == "unit") {
    os << "unit: N(" << idx[0] << "," << idx[1] << "," << idx[2] << ") = " << lhs
       << ", expected " << rhs;
  } else if (kind == "duality") {
    os << "duality: N(" << idx[0] << "," << idx[1] << ",0) = " << lhs
       << ", expected " << rhs << " from dual(" << idx[0] << ") = " << idx[2];
  } else if (kind == "dual_involution") {
    os << "dual_involution: dual(dual(" << idx[0] << ")) = " << lhs
       << ", expected " << idx[0];
  } else if (kind == "frobenius") {
    os << "frobenius: N(" << idx[0] << ",dual(" << idx[1] << ")," << idx[2]
       << ") = " << lhs << " != N(" << idx[2] << "," << idx[1] << "," << idx[0]
       << ") = " << rhs;
  } else if (kind == "associativity") {
    os << "associativity: sum_s N(" << idx[0] << "," << idx[1] << ",s) N(s," << idx[2]
       << "," << idx[3] << ") = " << lhs << " != sum_s N(" << idx[1] << "," << idx[2]
       << ",s) N(" << idx[0] << ",s," << idx[3] << ") = " << rhs;
  } else if (kind == "nonnegativity") {
    os << "nonnegativity: N(" << idx[0] << "," << idx[1] << "," << idx[2]
       << ") = " << lhs << " < 0";
  } else {
    os << kind;
  }
  return os.str();
}

RingValidation validate(const FusionRing& R) {
  check_shape(R);
  RingValidation out;
  auto fail = [&](FailedIdentity id) {
    out.valid = false;
    if (out.failures.size() < kMaxFailures)
      out.failures.push_back(std::move(id));
    else
      out.truncated = true;
  };
  int n = R.rank;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (R.at(k, j, i) < 0)
          fail({"nonnegativity", {k, j, i, 0}, R.at(k, j, i), 0});
  if (!out.valid) return out;  // remaining identities assume nonnegative entries

  if (R.dual[0] != 0) fail({"duality", {0, 0, 0}, R.dual[0], 0});
  for (int k = 0; k < n; ++k)
    if (R.dual[R.dual[k]] != k)
      fail({"dual_involution", {k, 0, 0, 0}, R.dual[R.dual[k]], k});

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      long long want = (i == j) ? 1 : 0;
      if (R.at(0, j, i) != want) fail({"unit", {0, j, i, 0}, R.at(0, j, i), want});
      if (R.at(j, 0, i) != want) fail({"unit", {j, 0, i, 0}, R.at(j, 0, i), want});
    }
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      long long want = (j == R.dual[k]) ? 1 : 0;
      if (R.at(k, j, 0) != want)
        fail({"duality", {k, j, R.dual[k], 0}, R.at(k, j, 0), want});
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (R.at(i, R.dual[j], k) != R.at(k, j, i))
          fail({"frobenius", {i, j, k, 0}, R.at(i, R.dual[j], k), R.at(k, j, i)});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int t = 0; t < n; ++t) {
          long long lhs = 0, rhs = 0;
          for (int s = 0; s < n; ++s) {
            lhs += R.at(a, b, s) * R.at(s, c, t);
            rhs += R.at(b, c, s) * R.at(a, s, t);
          }
          if (lhs != rhs) fail({"associativity", {a, b, c, t}, lhs, rhs});
        }
  return out;
}

bool identity_holds(const FusionRing& R, const FailedIdentity& id) {
  int n = R.rank;
  if (id.kind == "nonnegativity") return R.at(id.idx[0], id.idx[1], id.idx[2]) >= 0;
  if (id.kind == "dual_involution") return R.dual[R.dual[id.idx[0]]] == id.idx[0];
  if (id.kind == "unit") {
    int k = id.idx[0], j = id.idx[1], i = id.idx[2];
    long long want = (k == 0) ? (i == j ? 1 : 0) : (i == k ? 1 : 0);
    return R.at(k, j, i) == want;
  }
  if (id.kind == "duality") {
    int k = id.idx[0], j = id.idx[1];
    if (k == 0 && j == 0 && id.idx[2] == 0) return R.dual[0] == 0;
    return R.at(k, j, 0) == ((j == R.dual[k]) ? 1 : 0);
  }
  if (id.kind == "frobenius") {
    int i = id.idx[0], j = id.idx[1], k = id.idx[2];
    return R.at(i, R.dual[j], k) == R.at(k, j, i);
  }
  if (id.kind == "associativity") {
    int a = id.idx[0], b = id.idx[1], c = id.idx[2], t = id.idx[3];
    long long lhs = 0, rhs = 0;
    for (int s = 0; s < n; ++s) {
      lhs += R.at(a, b, s) * R.at(s, c, t);
      rhs += R.at(b, c, s) * R.at(a, s, t);
    }
    return lhs == rhs;
  }
  throw InvalidInput("identity_holds: unknown identity kind " + id.kind);
}

std::vector<RMatrix> fusion_matrices(const FusionRing& R) {
  check_shape(R);
  std::vector<RMatrix> Ms;
  Ms.reserve(R.rank);
  for (int k = 0; k < R.rank; ++k) {
    RMatrix M(R.rank, R.rank);
    for (int i = 0; i < R.rank; ++i)
      for (int j = 0; j < R.rank; ++j) M(i, j) = static_cast<double>(R.at(k, j, i));
    Ms.push_back(std::move(M));
  }
  return Ms;
}

std::vector<double> fp_dimensions(const FusionRing& R) {
  auto Ms = fusion_matrices(R);
  std::vector<double> d;
  d.reserve(Ms.size());
  for (size_t k = 0; k < Ms.size(); ++k) {
    double perron = perron_eigen(Ms[k]).value;
    double snorm = spectral_norm(Ms[k]);
    if (std::abs(perron - snorm) > 1e-9 * (1.0 + snorm)) {
      std::ostringstream os;
      os << "fp_dimensions: Perron value " << perron << " and spectral norm "
         << snorm << " disagree at basis element " << k;
      throw NumericError(os.str());
    }
    d.push_back(perron);
  }
  return d;
}

namespace {
struct CriterionData {
  std::vector<RMatrix> Ms;
  std::vector<CMatrix> Ks;  // M_k (x) M_k / w_k
  int n = 0;
};

CriterionData criterion_data(const FusionRing& R, const std::vector<double>& weights) {
  CriterionData d;
  d.n = R.rank;
  d.Ms = fusion_matrices(R);
  d.Ks.reserve(d.Ms.size());
  for (size_t k = 0; k < d.Ms.size(); ++k) {
    CMatrix Mk = d.Ms[k].cast<std::complex<double>>();
    d.Ks.push_back(kron(Mk, Mk) / weights[k]);
  }
  return d;
}

CMatrix assemble_T(const CriterionData& d, const CVector& v) {
  CMatrix T = CMatrix::Zero(d.n * d.n, d.n * d.n);
  for (size_t k = 0; k < d.Ms.size(); ++k) {
    std::complex<double> c = v.adjoint() * (d.Ms[k] * v);
    T += c * d.Ks[k];
  }
  return T;
}

std::vector<double> spectral_weights(const std::vector<RMatrix>& Ms) {
  std::vector<double> w;
  w.reserve(Ms.size());
  for (const auto& M : Ms) w.push_back(spectral_norm(M));
  return w;
}
}  // namespace

CMatrix criterion_T(const FusionRing& R, const CVector& v) {
  if (v.size() != R.rank) throw InvalidInput("criterion_T: vector has wrong dimension");
  auto Ms = fusion_matrices(R);
  CriterionData d = criterion_data(R, spectral_weights(Ms));
  CMatrix T = assemble_T(d, v);
  double resid = max_abs(T - T.adjoint());
  if (resid > 1e-10 * (1.0 + max_abs(T))) {
    std::ostringstream os;
    os << "criterion_T: operator not Hermitian (residual " << resid
       << "); dual structure inconsistent";
    throw NumericError(os.str());
  }
  return T;
}

CMatrix delta1_operator(const FusionRing& R, const CVector& v) {
  if (v.size() != R.rank)
    throw InvalidInput("delta1_operator: vector has wrong dimension");
  CriterionData d = criterion_data(R, fp_dimensions(R));
  return assemble_T(d, v);
}

double schur_value(const FusionRing& R, const CVector& v1, const CVector& v2,
                   const CVector& v3) {
  if (v1.size() != R.rank || v2.size() != R.rank || v3.size() != R.rank)
    throw InvalidInput("schur_value: vector has wrong dimension");
  auto Ms = fusion_matrices(R);
  auto w = spectral_weights(Ms);
  std::complex<double> acc = 0.0;
  for (size_t k = 0; k < Ms.size(); ++k) {
    std::complex<double> a = v1.adjoint() * (Ms[k] * v1);
    std::complex<double> b = v2.adjoint() * (Ms[k] * v2);
    std::complex<double> c = v3.adjoint() * (Ms[k] * v3);
    acc += a * b * c / w[k];
  }
  if (std::abs(acc.imag()) > 1e-9 * (1.0 + std::abs(acc)))
    throw NumericError("schur_value: value has a non-vanishing imaginary part");
  return acc.real();
}

namespace {

struct EvalResult {
  double lam;
  CVector u;      // minimal eigenvector of T(v)
  double gap;     // distance to the next eigenvalue
};

EvalResult eval_T(const CriterionData& d, const CVector& v) {
  CMatrix T = assemble_T(d, v);
  Eigen::SelfAdjointEigenSolver<CMatrix> es((T + T.adjoint()) * 0.5);
  EvalResult r;
  r.lam = es.eigenvalues()(0);
  r.u = es.eigenvectors().col(0);
  r.gap = es.eigenvalues().size() > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0)
                                      : std::numeric_limits<double>::infinity();
  return r;
}

CVector gradient(const CriterionData& d, const CVector& v, const CVector& u) {
  CVector g = CVector::Zero(d.n);
  for (size_t k = 0; k < d.Ms.size(); ++k) {
    std::complex<double> beta = u.adjoint() * (d.Ks[k] * u);
    g += beta * (d.Ms[k] * v);
  }
  return g;
}

// descent from one start; returns best (lambda, v) visited
std::pair<double, CVector> descend(const CriterionData& d, CVector v, bool* degenerate) {
  v.normalize();
  EvalResult cur = eval_T(d, v);
  double best = cur.lam;
  CVector bestv = v;
  const int max_iter = 120;
  for (int it = 0; it < max_iter; ++it) {
    CVector g = gradient(d, v, cur.u);
    double gn = g.norm();
    if (gn < 1e-12) break;
    double step = 0.25 / (1.0 + gn);
    bool improved = false;
    for (int ls = 0; ls < 10; ++ls) {
      CVector v2 = v - step * g;
      double n2 = v2.norm();
      if (n2 < 1e-14) break;
      v2 /= n2;
      EvalResult nxt = eval_T(d, v2);
      if (nxt.lam < cur.lam - 1e-15) {
        v = v2;
        cur = nxt;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (cur.lam < best) {
      best = cur.lam;
      bestv = v;
    }
    if (!improved) break;
  }
  if (degenerate) *degenerate = cur.gap < 1e-8 * (1.0 + std::abs(cur.lam));
  return {best, bestv};
}

// Nelder-Mead on the 2n real coordinates of v (normalized in the objective);
// used when the minimal eigenvalue is nearly degenerate and the eigenvector
// gradient is unreliable.
std::pair<double, CVector> simplex_polish(const CriterionData& d, const CVector& v0) {
  const int n = 2 * d.n;
  auto unpack = [&](const RVector& x) {
    CVector v(d.n);
    for (int i = 0; i < d.n; ++i) v[i] = std::complex<double>(x[i], x[i + d.n]);
    double nn = v.norm();
    if (nn < 1e-14) v = CVector::Unit(d.n, 0);
    else v /= nn;
    return v;
  };
  auto f = [&](const RVector& x) { return eval_T(d, unpack(x)).lam; };

  std::vector<RVector> pts(n + 1);
  std::vector<double> fv(n + 1);
  RVector x0(n);
  for (int i = 0; i < d.n; ++i) {
    x0[i] = v0[i].real();
    x0[i + d.n] = v0[i].imag();
  }
  pts[0] = x0;
  fv[0] = f(x0);
  for (int i = 0; i < n; ++i) {
    RVector x = x0;
    x[i] += 0.05;
    pts[i + 1] = x;
    fv[i + 1] = f(x);
  }
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  for (int it = 0; it < 200; ++it) {
    std::vector<int> ord(n + 1);
    for (int i = 0; i <= n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::vector<RVector> p2(n + 1);
    std::vector<double> f2(n + 1);
    for (int i = 0; i <= n; ++i) {
      p2[i] = pts[ord[i]];
      f2[i] = fv[ord[i]];
    }
    pts = p2;
    fv = f2;
    if (fv[n] - fv[0] < 1e-14) break;
    RVector centroid = RVector::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= n;
    RVector xr = centroid + alpha * (centroid - pts[n]);
    double fr = f(xr);
    if (fr < fv[0]) {
      RVector xe = centroid + gamma * (centroid - pts[n]);
      double fe = f(xe);
      if (fe < fr) {
        pts[n] = xe;
        fv[n] = fe;
      } else {
        pts[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      pts[n] = xr;
      fv[n] = fr;
    } else {
      RVector xc = centroid + rho * (pts[n] - centroid);
      double fc = f(xc);
      if (fc < fv[n]) {
        pts[n] = xc;
        fv[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[i] = pts[0] + sigma * (pts[i] - pts[0]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  return {fv[best], unpack(pts[best])};
}

}  // namespace

CriterionReport search_comult_violation(const FusionRing& R, int budget,
                                        std::uint64_t seed) {
  if (budget < 1) throw InvalidInput("search_comult_violation: budget must be >= 1");
  auto vr = validate(R);
  if (!vr.valid)
    throw InvalidInput("search_comult_violation: ring does not validate: " +
                       vr.failures.front().render());
  auto Ms = fusion_matrices(R);
  CriterionData d = criterion_data(R, spectral_weights(Ms));

  // structured starts: eigenvectors of each fusion matrix, then the Perron
  // vector of the total multiplication matrix
  std::vector<CVector> starts;
  for (const auto& M : Ms) {
    Eigen::ComplexEigenSolver<CMatrix> es(M.cast<std::complex<double>>());
    for (Eigen::Index c = 0; c < es.eigenvectors().cols(); ++c)
      starts.push_back(es.eigenvectors().col(c));
  }
  RMatrix Msum = RMatrix::Zero(R.rank, R.rank);
  for (const auto& M : Ms) Msum += M;
  starts.push_back(perron_eigen(Msum).vector.cast<std::complex<double>>());

  CriterionReport rep;
  rep.budget = budget;
  rep.seed = seed;
  rep.tol = 1e-7;
  rep.best_value = std::numeric_limits<double>::infinity();

  bool saw_degenerate = false;
  for (int s = 0; s < budget; ++s) {
    CVector v0;
    if (s < static_cast<int>(starts.size())) {
      v0 = starts[s];
    } else {
      CounterRng rng(seed, static_cast<std::uint64_t>(s));
      v0 = CVector(R.rank);
      for (int i = 0; i < R.rank; ++i) v0[i] = rng.next_cgaussian();
    }
    if (v0.norm() < 1e-14) continue;
    bool degenerate = false;
    auto [lam, v] = descend(d, v0, &degenerate);
    saw_degenerate = saw_degenerate || degenerate;
    ++rep.starts_used;
    if (lam < rep.best_value) {
      rep.best_value = lam;
      rep.witness = v;
    }
  }
  // one polish pass from the incumbent: descent stalls on the degenerate
  // plateau at 0 when the minimal eigenvalue is attained non-smoothly
  if (saw_degenerate && rep.best_value > -rep.tol) {
    auto [lam2, v2] = simplex_polish(d, rep.witness);
    rep.fallback_used = true;
    if (lam2 < rep.best_value) {
      rep.best_value = lam2;
      rep.witness = v2;
    }
  }

  // recheck the witness with a fresh assembly
  CMatrix T = assemble_T(d, rep.witness);
  rep.hermiticity_residual = max_abs(T - T.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es((T + T.adjoint()) * 0.5);
  double lam = es.eigenvalues()(0);
  CVector u = es.eigenvectors().col(0);
  rep.eigen_residual = (T * u - lam * u).norm();
  rep.best_value = std::min(rep.best_value, lam);
  double scale = 1.0 + max_abs(T);
  bool certified = rep.hermiticity_residual <= 1e-10 * scale &&
                   rep.eigen_residual <= 1e-8 * scale;
  if (lam < -rep.tol)
    rep.verdict = certified ? CriterionVerdict::violation : CriterionVerdict::inconclusive;
  else
    rep.verdict = CriterionVerdict::pass;
  return rep;
}

double product_vector_min(const CMatrix& M, int n1, int n2, int budget,
                          std::uint64_t seed) {
  if (M.rows() != n1 * n2 || M.cols() != n1 * n2)
    throw InvalidInput("product_vector_min: dimension mismatch");
  if (!is_hermitian(M))
    throw NumericError("product_vector_min: matrix not Hermitian");
  if (budget < 1) throw InvalidInput("product_vector_min: budget must be >= 1");

  auto reduce_second = [&](const CVector& w) {
    CMatrix A = CMatrix::Zero(n1, n1);
    for (int i = 0; i < n1; ++i)
      for (int ip = 0; ip < n1; ++ip) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < n2; ++j)
          for (int jp = 0; jp < n2; ++jp)
            acc += std::conj(w[j]) * M(i * n2 + j, ip * n2 + jp) * w[jp];
        A(i, ip) = acc;
      }
    return A;
  };
  auto reduce_first = [&](const CVector& v) {
    CMatrix B = CMatrix::Zero(n2, n2);
    for (int j = 0; j < n2; ++j)
      for (int jp = 0; jp < n2; ++jp) {
        std::complex<double> acc = 0.0;
        for (int i = 0; i < n1; ++i)
          for (int ip = 0; ip < n1; ++ip)
            acc += std::conj(v[i]) * M(i * n2 + j, ip * n2 + jp) * v[ip];
        B(j, jp) = acc;
      }
    return B;
  };

  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < budget; ++s) {
    CounterRng rng(seed, static_cast<std::uint64_t>(s));
    CVector w(n2);
    if (s == 0) {
      w = CVector::Constant(n2, 1.0);  // deterministic first start
    } else {
      for (int j = 0; j < n2; ++j) w[j] = rng.next_cgaussian();
    }
    if (w.norm() < 1e-14) continue;
    w.normalize();
    double value = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 100; ++it) {
      Eigen::SelfAdjointEigenSolver<CMatrix> esa(reduce_second(w));
      CVector v = esa.eigenvectors().col(0);
      Eigen::SelfAdjointEigenSolver<CMatrix> esb(reduce_first(v));
      double lam = esb.eigenvalues()(0);
      w = esb.eigenvectors().col(0);
      if (lam > value - 1e-14) {
        value = std::min(value, lam);
        break;
      }
      value = lam;
    }
    best = std::min(best, value);
  }
  return best;
}

}  // namespace qconv
