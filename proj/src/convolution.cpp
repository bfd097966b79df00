#include "qconv/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace qconv {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error = nullptr;
  std::mutex err_mutex;
  int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi]() {
      try {
        for (int i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

TensorSquareMap tensor_square(const SpecPtr& spec) {
  TensorSquareMap out;
  out.D = spec->coord_dim();
  int B = spec->num_blocks();
  std::vector<BlockDim> sq_blocks;
  sq_blocks.reserve(static_cast<size_t>(B) * B);
  for (int i = 0; i < B; ++i)
    for (int j = 0; j < B; ++j)
      sq_blocks.push_back({spec->blocks()[i].n * spec->blocks()[j].n,
                           spec->blocks()[i].delta * spec->blocks()[j].delta});
  out.sq_spec = make_spec(std::move(sq_blocks));
  out.pair_index.assign(static_cast<size_t>(out.D) * out.D, -1);
  for (int i = 0; i < B; ++i) {
    int ni = spec->blocks()[i].n;
    for (int j = 0; j < B; ++j) {
      int nj = spec->blocks()[j].n;
      int sq_block = i * B + j;
      for (int s = 0; s < ni; ++s)
        for (int t = 0; t < ni; ++t)
          for (int u = 0; u < nj; ++u)
            for (int v = 0; v < nj; ++v) {
              int a = spec->coord_index(i, s, t);
              int b = spec->coord_index(j, u, v);
              int row = s * nj + u, col = t * nj + v;
              out.pair_index[static_cast<size_t>(a) * out.D + b] =
                  out.sq_spec->coord_index(sq_block, row, col);
            }
    }
  }
  return out;
}

CVector convolve_coords(const ConvolutionStructure& S, const CVector& x,
                        const CVector& y) {
  int D = S.spec->coord_dim();
  if (x.size() != D || y.size() != D)
    throw InvalidInput("convolve: coordinate dimension mismatch");
  CVector z = CVector::Zero(D);
  const std::complex<double>* t = S.tensor.data();
  for (int a = 0; a < D; ++a) {
    if (x[a] == std::complex<double>(0.0, 0.0)) {
      t += static_cast<size_t>(D) * D;
      continue;
    }
    for (int b = 0; b < D; ++b) {
      std::complex<double> xy = x[a] * y[b];
      if (xy == std::complex<double>(0.0, 0.0)) {
        t += D;
        continue;
      }
      for (int c = 0; c < D; ++c) z[c] += xy * t[c];
      t += D;
    }
  }
  return z;
}

Element convolve(const ConvolutionStructure& S, const Element& x, const Element& y) {
  require_same_spec(x, y, "convolve");
  if (!(*x.spec == *S.spec))
    throw InvalidInput("convolve: element does not live on the structure's algebra");
  return from_coords(x.spec, convolve_coords(S, coords(x), coords(y)));
}

Element tensor_embed(const TensorSquareMap& sq, const Element& x, const Element& y) {
  CVector xc = coords(x), yc = coords(y);
  CVector out = CVector::Zero(sq.sq_spec->coord_dim());
  for (int a = 0; a < sq.D; ++a)
    for (int b = 0; b < sq.D; ++b) out[sq.pair(a, b)] = xc[a] * yc[b];
  return from_coords(sq.sq_spec, out);
}

Element comultiply(const ConvolutionStructure& S, const TensorSquareMap& sq,
                   const Element& z) {
  if (!(*z.spec == *S.spec))
    throw InvalidInput("comultiply: element does not live on the structure's algebra");
  CVector zc = coords(z);
  int D = S.spec->coord_dim();
  CVector out = CVector::Zero(sq.sq_spec->coord_dim());
  const std::complex<double>* t = S.tensor.data();
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      std::complex<double> acc = 0.0;
      for (int c = 0; c < D; ++c) acc += zc[c] * std::conj(t[c]);
      out[sq.pair(a, b)] = acc;
      t += D;
    }
  return from_coords(sq.sq_spec, out);
}

Element apply_antipode(const Antipode& rho, const Element& x) {
  int B = x.spec->num_blocks();
  if (static_cast<int>(rho.perm.size()) != B ||
      static_cast<int>(rho.unitary.size()) != B)
    throw InvalidInput("apply_antipode: antipode block data mismatch");
  Element out = Element::zero(x.spec);
  for (int i = 0; i < B; ++i) {
    int j = rho.perm[i];
    if (j < 0 || j >= B) throw InvalidInput("apply_antipode: permutation out of range");
    if (x.spec->blocks()[i].n != x.spec->blocks()[j].n)
      throw InvalidInput("apply_antipode: permuted blocks have different sizes");
    out.block[i] = rho.unitary[i] * x.block[j].transpose() * rho.unitary[i].adjoint();
  }
  return out;
}

const AxiomVerdict* AxiomReport::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

void AxiomReport::add(AxiomVerdict v) {
  all_pass = all_pass && v.pass;
  verdicts.push_back(std::move(v));
}

namespace {

constexpr std::uint64_t kStreamBlock = 1ull << 32;

double min_eig_hermitized(const Element& x, double* herm_resid) {
  double resid = 0.0, lam = std::numeric_limits<double>::infinity();
  for (const auto& b : x.block) {
    resid = std::max(resid, max_abs(b - b.adjoint()));
    Eigen::SelfAdjointEigenSolver<CMatrix> es((b + b.adjoint()) * 0.5);
    lam = std::min(lam, es.eigenvalues()(0));
  }
  if (herm_resid) *herm_resid = resid;
  return lam;
}

Element minimal_projection(const SpecPtr& spec, int j) {
  Element e = Element::zero(spec);
  e.block[j](0, 0) = 1.0;
  return e;
}

Element unit_sample(const SpecPtr& spec, CounterRng& rng) {
  Element x = random_element(spec, rng);
  double n = p_norm(x, 2.0);
  x *= std::complex<double>(1.0 / n, 0.0);
  return x;
}

Element density_sample(const SpecPtr& spec, CounterRng& rng) {
  return normalize_trace(random_positive(spec, rng), 1.0);
}

AxiomVerdict sampled_verdict(const std::string& name, int samples, int threads,
                             double tol,
                             const std::function<double(int)>& slack_of) {
  std::vector<double> slack(samples, 0.0);
  parallel_for(samples, threads, [&](int i) { slack[i] = slack_of(i); });
  AxiomVerdict v;
  v.name = name;
  v.worst_slack = samples ? *std::max_element(slack.begin(), slack.end()) : 0.0;
  v.pass = v.worst_slack <= tol;
  return v;
}

}  // namespace

AxiomReport check_good_convolution(const ConvolutionStructure& S,
                                   const CheckOptions& opt) {
  AxiomReport rep;
  rep.tol = opt.tol;
  rep.samples = opt.samples;
  rep.seed = opt.seed;
  TensorSquareMap sq = tensor_square(S.spec);

  rep.add(sampled_verdict("positivity", opt.samples, opt.threads, opt.tol, [&](int i) {
    CounterRng rx(opt.seed, 0 * kStreamBlock + 2 * i);
    CounterRng ry(opt.seed, 0 * kStreamBlock + 2 * i + 1);
    Element x = density_sample(S.spec, rx);
    Element y = density_sample(S.spec, ry);
    double resid = 0.0;
    double lam = min_eig_hermitized(convolve(S, x, y), &resid);
    return std::max(resid, -lam);
  }));

  rep.add(sampled_verdict("young_primary", opt.samples, opt.threads, opt.tol,
                          [&](int i) {
    CounterRng rx(opt.seed, 1 * kStreamBlock + 2 * i);
    CounterRng ry(opt.seed, 1 * kStreamBlock + 2 * i + 1);
    Element x = unit_sample(S.spec, rx);
    Element y = unit_sample(S.spec, ry);
    return p_norm(convolve(S, x, y), 1.0) - S.k * p_norm(x, 1.0) * p_norm(y, 1.0);
  }));

  rep.add(sampled_verdict("haar", opt.samples, opt.threads, opt.tol, [&](int i) {
    CounterRng rx(opt.seed, 2 * kStreamBlock + 2 * i);
    CounterRng ry(opt.seed, 2 * kStreamBlock + 2 * i + 1);
    Element x = unit_sample(S.spec, rx);
    Element y = unit_sample(S.spec, ry);
    return std::abs(trace(convolve(S, x, y)) - S.k * trace(x) * trace(y));
  }));

  {
    AxiomVerdict v;
    v.name = "unitality";
    Element lhs = comultiply(S, sq, Element::identity(S.spec));
    Element rhs = Element::identity(sq.sq_spec);
    rhs *= std::complex<double>(S.k, 0.0);
    v.worst_slack = max_abs(lhs - rhs);
    v.pass = v.worst_slack <= opt.tol;
    rep.add(std::move(v));
  }

  if (S.spec->commutative()) {
    AxiomVerdict v;
    v.name = "comult_positivity";
    v.note = "minimal-projections";
    double worst = 0.0;
    for (int j = 0; j < S.spec->num_blocks(); ++j) {
      double resid = 0.0;
      double lam = min_eig_hermitized(comultiply(S, sq, minimal_projection(S.spec, j)),
                                      &resid);
      worst = std::max(worst, std::max(resid, -lam));
    }
    v.worst_slack = worst;
    v.pass = worst <= opt.tol;
    rep.add(std::move(v));
  } else {
    AxiomVerdict v = sampled_verdict("comult_positivity", opt.samples, opt.threads,
                                     opt.tol, [&](int i) {
      CounterRng rz(opt.seed, 3 * kStreamBlock + i);
      Element z = density_sample(S.spec, rz);
      double resid = 0.0;
      double lam = min_eig_hermitized(comultiply(S, sq, z), &resid);
      return std::max(resid, -lam);
    });
    v.note = "sampled";
    rep.add(std::move(v));
  }
  return rep;
}

AxiomVerdict check_associativity(const ConvolutionStructure& S,
                                 const CheckOptions& opt) {
  AxiomVerdict v = sampled_verdict("associativity", opt.samples, opt.threads, opt.tol,
                                   [&](int i) {
    CounterRng rx(opt.seed, 4 * kStreamBlock + 3 * i);
    CounterRng ry(opt.seed, 4 * kStreamBlock + 3 * i + 1);
    CounterRng rz(opt.seed, 4 * kStreamBlock + 3 * i + 2);
    Element x = unit_sample(S.spec, rx);
    Element y = unit_sample(S.spec, ry);
    Element z = unit_sample(S.spec, rz);
    return p_norm(convolve(S, convolve(S, x, y), z) -
                      convolve(S, x, convolve(S, y, z)),
                  2.0);
  });
  return v;
}

AxiomVerdict check_frobenius(const ConvolutionStructure& S, const Antipode& rho,
                             const CheckOptions& opt) {
  return sampled_verdict("frobenius", opt.samples, opt.threads, opt.tol, [&](int i) {
    CounterRng rx(opt.seed, 5 * kStreamBlock + 3 * i);
    CounterRng ry(opt.seed, 5 * kStreamBlock + 3 * i + 1);
    CounterRng rz(opt.seed, 5 * kStreamBlock + 3 * i + 2);
    Element x = unit_sample(S.spec, rx);
    Element y = unit_sample(S.spec, ry);
    Element z = unit_sample(S.spec, rz);
    std::complex<double> lhs = trace(mul(convolve(S, x, y), z));
    std::complex<double> rhs =
        trace(mul(convolve(S, apply_antipode(rho, z), x), apply_antipode(rho, y)));
    return std::abs(lhs - rhs);
  });
}

AxiomReport check_antipode(const ConvolutionStructure& S, const Antipode& rho,
                           const CheckOptions& opt) {
  AxiomReport rep;
  rep.tol = opt.tol;
  rep.samples = opt.samples;
  rep.seed = opt.seed;

  {
    AxiomVerdict v;
    v.name = "antipode_structure";
    double worst = 0.0;
    int B = S.spec->num_blocks();
    bool shape_ok = static_cast<int>(rho.perm.size()) == B &&
                    static_cast<int>(rho.unitary.size()) == B;
    std::vector<int> seen(B, 0);
    if (shape_ok) {
      for (int i = 0; i < B; ++i) {
        int j = rho.perm[i];
        if (j < 0 || j >= B || seen[j]++) {
          shape_ok = false;
          break;
        }
        if (S.spec->blocks()[i].n != S.spec->blocks()[j].n) {
          shape_ok = false;
          break;
        }
        worst = std::max(worst, std::abs(S.spec->blocks()[i].delta -
                                         S.spec->blocks()[j].delta));
        const CMatrix& V = rho.unitary[i];
        if (V.rows() != S.spec->blocks()[i].n || V.cols() != S.spec->blocks()[i].n) {
          shape_ok = false;
          break;
        }
        worst = std::max(
            worst, max_abs(CMatrix(V * V.adjoint() -
                                   CMatrix::Identity(V.rows(), V.cols()))));
      }
    }
    v.worst_slack = worst;
    v.pass = shape_ok && worst <= opt.tol;
    if (!shape_ok) v.note = "block permutation or unitary shape invalid";
    rep.add(std::move(v));
  }
  if (!rep.all_pass) return rep;

  rep.add(sampled_verdict("antipode_antimultiplicative", opt.samples, opt.threads,
                          opt.tol, [&](int i) {
    CounterRng rx(opt.seed, 6 * kStreamBlock + 2 * i);
    CounterRng ry(opt.seed, 6 * kStreamBlock + 2 * i + 1);
    Element x = unit_sample(S.spec, rx);
    Element y = unit_sample(S.spec, ry);
    return p_norm(apply_antipode(rho, mul(x, y)) -
                      mul(apply_antipode(rho, y), apply_antipode(rho, x)),
                  2.0);
  }));

  rep.add(sampled_verdict("antipode_star", opt.samples, opt.threads, opt.tol,
                          [&](int i) {
    CounterRng rx(opt.seed, 7 * kStreamBlock + i);
    Element x = unit_sample(S.spec, rx);
    return p_norm(apply_antipode(rho, adjoint(x)) - adjoint(apply_antipode(rho, x)),
                  2.0);
  }));

  rep.add(sampled_verdict("antipode_trace", opt.samples, opt.threads, opt.tol,
                          [&](int i) {
    CounterRng rx(opt.seed, 8 * kStreamBlock + i);
    Element x = unit_sample(S.spec, rx);
    return std::abs(trace(apply_antipode(rho, x)) - trace(x));
  }));

  {
    const double ps[] = {0.5, 1.0, 2.0, 5.0,
                         std::numeric_limits<double>::infinity()};
    rep.add(sampled_verdict("antipode_pnorm", opt.samples, opt.threads, opt.tol,
                            [&](int i) {
      CounterRng rx(opt.seed, 9 * kStreamBlock + i);
      Element x = unit_sample(S.spec, rx);
      Element rx_el = apply_antipode(rho, x);
      double worst = 0.0;
      for (double p : ps)
        worst = std::max(worst, std::abs(p_norm(rx_el, p) - p_norm(x, p)));
      return worst;
    }));
  }
  return rep;
}

FNAlgebra assemble_fn_algebra(ConvolutionStructure S, Antipode rho,
                              const CheckOptions& opt) {
  AxiomReport rep = check_good_convolution(S, opt);
  AxiomReport anti = check_antipode(S, rho, opt);
  for (auto& v : anti.verdicts) rep.add(std::move(v));
  if (rep.all_pass) rep.add(check_frobenius(S, rho, opt));
  for (const auto& v : rep.verdicts) {
    if (!v.pass) {
      std::ostringstream os;
      os << "assemble_fn_algebra: axiom '" << v.name << "' failed (worst slack "
         << v.worst_slack << ", tolerance " << opt.tol << ")";
      throw BuildError(os.str());
    }
  }
  return FNAlgebra{std::move(S), std::move(rho), std::move(rep)};
}

ConvolutionStructure group_structure(const GroupTable& G) {
  validate_group(G);
  int n = G.order();
  ConvolutionStructure S;
  S.spec = make_spec(std::vector<BlockDim>(n, BlockDim{1, 1.0}));
  S.k = 1.0;
  S.tensor.assign(static_cast<size_t>(n) * n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) S.at(a, b, G.mul(a, b)) = 1.0;
  return S;
}

Antipode group_antipode(const GroupTable& G) {
  validate_group(G);
  int n = G.order();
  Antipode rho;
  rho.perm.resize(n);
  rho.unitary.assign(n, CMatrix::Identity(1, 1));
  for (int g = 0; g < n; ++g) rho.perm[g] = G.inverse(g);
  return rho;
}

FNAlgebra build_group_algebra(const GroupTable& G, const CheckOptions& opt) {
  return assemble_fn_algebra(group_structure(G), group_antipode(G), opt);
}

ConvolutionStructure build_unitary_convolution(const CMatrix& U, int n) {
  if (U.rows() != n * n || U.cols() != n * n)
    throw InvalidInput("build_unitary_convolution: U must act on C^n (x) C^n");
  CMatrix gram = U * U.adjoint();
  double resid = max_abs(CMatrix(gram - CMatrix::Identity(n * n, n * n)));
  if (resid > 1e-10 * (1.0 + max_abs(gram))) {
    std::ostringstream os;
    os << "build_unitary_convolution: U not unitary (residual " << resid << ")";
    throw InvalidInput(os.str());
  }
  ConvolutionStructure S;
  S.spec = make_spec({BlockDim{n, 1.0}});
  S.k = 1.0;
  int D = n * n;
  S.tensor.assign(static_cast<size_t>(D) * D * D, 0.0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          // U (E_st (x) E_uv) U^* = U.col(s*n+u) U.col(t*n+v)^*
          CMatrix big = U.col(s * n + u) * U.col(t * n + v).adjoint();
          CMatrix res = partial_trace_second(big, n, n);
          int a = s * n + t, b = u * n + v;
          for (int sp = 0; sp < n; ++sp)
            for (int tp = 0; tp < n; ++tp)
              S.at(a, b, sp * n + tp) = res(sp, tp);
        }
  return S;
}

ConvolutionStructure build_theta_swap(double theta, int n) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw InvalidInput("build_theta_swap: theta must lie in [0, 1]");
  if (n < 1) throw InvalidInput("build_theta_swap: n must be >= 1");
  CMatrix S = CMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) S(i * n + j, j * n + i) = 1.0;
  CMatrix U = std::sqrt(theta) * CMatrix::Identity(n * n, n * n) +
              std::complex<double>(0.0, std::sqrt(1.0 - theta)) * S;
  return build_unitary_convolution(U, n);
}

CMatrix theta_swap_closed_form(double theta, const CMatrix& x, const CMatrix& y) {
  double c = std::sqrt(theta * (1.0 - theta));
  return theta * y.trace() * x + (1.0 - theta) * x.trace() * y -
         std::complex<double>(0.0, c) * (x * y - y * x);
}

std::pair<ConvolutionStructure, Antipode> fusion_bialgebra_parts(const FusionRing& R) {
  RingValidation vr = validate(R);
  if (!vr.valid)
    throw InvalidInput("fusion_bialgebra: ring does not validate: " +
                       vr.failures.front().render());
  int n = R.rank;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (R.at(i, j, k) != R.at(j, i, k))
          throw InvalidInput("fusion_bialgebra: ring is not commutative");

  auto Ms = fusion_matrices(R);

  // simultaneous unitary diagonalization of the commuting normal family
  CMatrix V;
  double best_offdiag = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 8; ++attempt) {
    CounterRng rng(0x5EEDBA5E + attempt, 0);
    CMatrix H = CMatrix::Zero(n, n);
    for (const auto& M : Ms) {
      CMatrix Mc = M.cast<std::complex<double>>();
      double a = 0.25 + rng.next_double(), b = 0.25 + rng.next_double();
      H += a * (Mc + Mc.adjoint());
      H += b * std::complex<double>(0.0, 1.0) * (Mc - Mc.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    CMatrix W = es.eigenvectors();
    double offdiag = 0.0;
    for (const auto& M : Ms) {
      CMatrix Dk = W.adjoint() * M.cast<std::complex<double>>() * W;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) offdiag = std::max(offdiag, std::abs(Dk(i, j)));
    }
    if (offdiag < best_offdiag) {
      best_offdiag = offdiag;
      V = W;
    }
    if (best_offdiag < 1e-11) break;
  }
  if (best_offdiag > 1e-8)
    throw NumericError(
        "fusion_bialgebra: simultaneous diagonalization failed (off-diagonal "
        "residual " +
        std::to_string(best_offdiag) + ")");

  // the minimal-projection column carrying the Perron character
  std::vector<std::vector<std::complex<double>>> diag(
      Ms.size(), std::vector<std::complex<double>>(n));
  for (size_t k = 0; k < Ms.size(); ++k) {
    CMatrix Dk = V.adjoint() * Ms[k].cast<std::complex<double>>() * V;
    for (int j = 0; j < n; ++j) diag[k][j] = Dk(j, j);
  }
  int perron_col = 0;
  double best_sum = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (size_t k = 0; k < Ms.size(); ++k) s += diag[k][j].real();
    if (s > best_sum) {
      best_sum = s;
      perron_col = j;
    }
  }
  std::vector<double> d_diag(Ms.size());
  for (size_t k = 0; k < Ms.size(); ++k) {
    std::complex<double> val = diag[k][perron_col];
    if (std::abs(val.imag()) > 1e-8 * (1.0 + std::abs(val)))
      throw NumericError("fusion_bialgebra: Perron character is not real");
    d_diag[k] = val.real();
  }
  std::vector<double> d_perron = fp_dimensions(R);
  for (size_t k = 0; k < Ms.size(); ++k)
    if (std::abs(d_diag[k] - d_perron[k]) > 1e-9 * (1.0 + d_perron[k]))
      throw NumericError(
          "fusion_bialgebra: diagonalization and Perron dimensions disagree");

  // exact dual symmetry of the weights
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = 0.5 * (d_perron[i] + d_perron[R.dual[i]]);

  std::vector<BlockDim> blocks;
  blocks.reserve(n);
  for (int i = 0; i < n; ++i) blocks.push_back({1, d[i] * d[i]});
  ConvolutionStructure S;
  S.spec = make_spec(std::move(blocks));
  S.k = 1.0;
  S.tensor.assign(static_cast<size_t>(n) * n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        S.at(a, b, c) = static_cast<double>(R.at(a, b, c));
  Antipode rho;
  rho.perm = R.dual;
  rho.unitary.assign(n, CMatrix::Identity(1, 1));
  return {std::move(S), std::move(rho)};
}

FNAlgebra build_fusion_bialgebra(const FusionRing& R, const CheckOptions& opt) {
  auto [S, rho] = fusion_bialgebra_parts(R);
  return assemble_fn_algebra(std::move(S), std::move(rho), opt);
}

ConvolutionStructure rescale_structure(const ConvolutionStructure& S, double lam1,
                                       double lam2) {
  if (!(lam1 > 0.0) || !(lam2 > 0.0))
    throw InvalidInput("rescale_structure: scale factors must be positive");
  ConvolutionStructure out;
  std::vector<BlockDim> blocks = S.spec->blocks();
  for (auto& b : blocks) b.delta /= lam1;
  out.spec = make_spec(std::move(blocks));
  out.k = lam1 * S.k / lam2;
  out.tensor = S.tensor;
  std::complex<double> scale(std::sqrt(lam1) / lam2, 0.0);
  for (auto& t : out.tensor) t *= scale;
  return out;
}

}  // namespace qconv
