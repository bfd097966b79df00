#include "qconv/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qconv {

namespace {

constexpr std::uint64_t kStreamBlock = 1ull << 32;
const double kInf = std::numeric_limits<double>::infinity();

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

double xlogx(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

Element scaled(const Element& x, double a) {
  Element out = x;
  out *= std::complex<double>(a, 0.0);
  return out;
}

Element minimal_projection(const SpecPtr& spec, int j) {
  Element e = Element::zero(spec);
  e.block[j](0, 0) = 1.0;
  return e;
}

Element unit_sample(const SpecPtr& spec, CounterRng& rng) {
  Element x = random_element(spec, rng);
  return scaled(x, 1.0 / p_norm(x, 2.0));
}

void check_psd(const Element& x, const char* where) {
  double floor = -1e-9 * (1.0 + max_abs(x));
  for (const auto& [lam, w] : weighted_spectrum(x))
    if (lam < floor) {
      std::ostringstream os;
      os << where << ": input must be PSD (eigenvalue " << lam << ")";
      throw InvalidInput(os.str());
    }
}

double real_trace(const Element& x, const char* where) {
  std::complex<double> tr = trace(x);
  if (std::abs(tr.imag()) > 1e-9 * (1.0 + std::abs(tr)))
    throw InvalidInput(std::string(where) + ": trace is not real");
  return tr.real();
}

void check_normalized(const Element& x, double k, const char* where) {
  check_psd(x, where);
  if (std::abs(real_trace(x, where) - 1.0 / k) > 1e-10)
    throw InvalidInput(std::string(where) +
                       ": inputs must have trace 1/k (use normalize_trace)");
}

Element hermitized(const Element& x) {
  Element out = x;
  for (auto& m : out.block) m = (m + m.adjoint()) * 0.5;
  return out;
}

// gradient of H(y) = -tau(y log y) at PSD y, eigenvalues floored for the log
Element entropy_gradient(const Element& y) {
  Element g = y;
  for (auto& m : g.block) {
    EigH e = eig_hermitian(m);
    RVector v = e.values;
    for (int i = 0; i < v.size(); ++i)
      v[i] = -(std::log(std::max(v[i], 1e-18)) + 1.0);
    m = e.vectors * v.cast<std::complex<double>>().asDiagonal() *
        e.vectors.adjoint();
  }
  return g;
}

// PSD clamp, then radial pull-back into the p-ball around a PSD center;
// the convex combination with the center stays PSD, so one pass is enough
Element project_feasible(const Element& center, const Element& y, double p,
                         double eps) {
  Element z = psd_clamp(hermitized(y));
  double dist = p_dist(z, center, p);
  if (dist > eps && dist > 0.0) {
    double a = eps > 0.0 ? (eps / dist) * (1.0 - 1e-12) : 0.0;
    z = center + scaled(z - center, a);
  }
  return z;
}

// maximizer of the linearized objective tau(g (z - center)) over the p-ball;
// lands on l1/linf ball corners that gradients with radial pull-back only
// approach asymptotically
Element dual_norm_step(const Element& center, const Element& g, double p,
                       double eps) {
  Element u = hermitized(g);
  if (p == 1.0) {
    double top = -std::numeric_limits<double>::infinity();
    std::vector<EigH> eigs;
    eigs.reserve(u.block.size());
    for (auto& m : u.block) {
      eigs.push_back(eig_hermitian(m));
      if (eigs.back().values.size() > 0)
        top = std::max(top, eigs.back().values.maxCoeff());
    }
    double cut = top - 1e-12 * std::max(1.0, std::abs(top));
    for (size_t b = 0; b < u.block.size(); ++b) {
      RVector v = eigs[b].values;
      for (int i = 0; i < v.size(); ++i) v[i] = v[i] >= cut ? 1.0 : 0.0;
      u.block[b] = eigs[b].vectors * v.cast<std::complex<double>>().asDiagonal() *
                   eigs[b].vectors.adjoint();
    }
    double t = std::real(trace(u));
    if (t < 1e-300) return center;
    return center + scaled(u, eps / t);
  }
  double e = std::isinf(p) ? 0.0 : 1.0 / (p - 1.0);  // exponent q - 1
  for (auto& m : u.block) {
    EigH ev = eig_hermitian(m);
    RVector v = ev.values;
    for (int i = 0; i < v.size(); ++i) {
      double s = v[i] >= 0.0 ? 1.0 : -1.0;
      v[i] = e == 0.0 ? s : s * std::pow(std::abs(v[i]), e);
    }
    m = ev.vectors * v.cast<std::complex<double>>().asDiagonal() *
        ev.vectors.adjoint();
  }
  double nrm = p_norm(u, p);
  if (nrm < 1e-300) return center;
  return center + scaled(u, eps / nrm);
}

double ascend_entropy(const Element& center, double p, double eps, Element& y) {
  double fy = entropy(y);
  double step = 0.25 * std::max(eps, 1e-6);
  for (int it = 0; it < 80; ++it) {
    Element g = entropy_gradient(y);
    double gn = p_norm(g, 2.0);
    if (gn < 1e-14) break;
    bool improved = false;
    Element lmo = dual_norm_step(center, g, p, eps);
    for (double gamma : {1.0, 0.5, 0.25}) {
      Element cand = project_feasible(center, y + scaled(lmo - y, gamma), p, eps);
      double fc = entropy(cand);
      if (fc > fy + 1e-15) {
        y = cand;
        fy = fc;
        improved = true;
        break;
      }
    }
    double s = step;
    for (int halve = 0; halve < 12; ++halve) {
      Element cand = project_feasible(center, y + scaled(g, s / gn), p, eps);
      double fc = entropy(cand);
      if (fc > fy + 1e-15) {
        y = cand;
        fy = fc;
        step = std::min(s * 2.0, 1.0);
        improved = true;
        break;
      }
      s *= 0.5;
    }
    if (!improved) break;
  }
  return fy;
}

InequalityCase make_case(std::vector<std::pair<std::string, double>> params,
                         std::vector<Element> witness, double lhs, double rhs,
                         double slack, std::string note = {}) {
  InequalityCase c;
  c.params = std::move(params);
  c.witness = std::move(witness);
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = slack;
  c.note = std::move(note);
  return c;
}

}  // namespace

std::vector<ExponentTriple> admissible_pairs(const std::vector<double>& grid) {
  std::vector<ExponentTriple> out;
  for (double p : grid)
    for (double q : grid) {
      if (!(p >= 1.0) || !(q >= 1.0))
        throw InvalidInput("admissible_pairs: exponents must lie in [1, inf]");
      double sum = inv(p) + inv(q);
      if (sum < 1.0 - 1e-12 || sum > 2.0 + 1e-12) continue;
      double rinv = sum - 1.0;
      out.push_back({p, q, rinv <= 1e-12 ? kInf : 1.0 / rinv});
    }
  return out;
}

InequalityReport young_sweep(const ConvolutionStructure& S, const SweepConfig& cfg) {
  InequalityReport rep;
  rep.suite = "young";
  rep.tol = cfg.tol;
  rep.samples = cfg.samples;
  rep.seed = cfg.seed;
  rep.semantics =
      "pass means ||x*y||_r / (k ||x||_p ||y||_q) <= 1 + tol over the grid, "
      "random samples, and structured pairs";
  auto triples = admissible_pairs(cfg.p_grid);

  std::vector<std::pair<Element, Element>> structured;
  Element I = Element::identity(S.spec);
  structured.emplace_back(I, I);
  if (S.spec->commutative())
    for (int i = 0; i < S.spec->num_blocks(); ++i)
      for (int j = 0; j < S.spec->num_blocks(); ++j)
        structured.emplace_back(minimal_projection(S.spec, i),
                                minimal_projection(S.spec, j));

  auto ratio_of = [&](const ExponentTriple& e, const Element& x, const Element& y) {
    double denom = S.k * p_norm(x, e.p) * p_norm(y, e.q);
    if (!(denom > 1e-300)) return -kInf;
    return p_norm(convolve(S, x, y), e.r) / denom;
  };
  auto record = [&](const ExponentTriple& e, const Element& x, const Element& y,
                    double ratio) {
    rep.worst_slack = ratio - 1.0;
    rep.worst = make_case({{"p", e.p}, {"q", e.q}, {"r", e.r}}, {x, y},
                          p_norm(convolve(S, x, y), e.r),
                          S.k * p_norm(x, e.p) * p_norm(y, e.q), ratio - 1.0,
                          "slack = lhs/rhs - 1");
  };

  double best_eq = -kInf;
  for (size_t g = 0; g < triples.size(); ++g) {
    const auto& e = triples[g];
    for (const auto& [x, y] : structured) {
      double ratio = ratio_of(e, x, y);
      ++rep.cases_checked;
      best_eq = std::max(best_eq, ratio);
      if (ratio - 1.0 > rep.worst_slack) record(e, x, y, ratio);
    }
    std::vector<double> ratios(cfg.samples, -kInf);
    parallel_for(cfg.samples, cfg.threads, [&](int i) {
      CounterRng rx(cfg.seed, g * kStreamBlock + 2 * i);
      CounterRng ry(cfg.seed, g * kStreamBlock + 2 * i + 1);
      ratios[i] = ratio_of(e, unit_sample(S.spec, rx), unit_sample(S.spec, ry));
    });
    rep.cases_checked += cfg.samples;
    for (int i = 0; i < cfg.samples; ++i)
      if (ratios[i] - 1.0 > rep.worst_slack) {
        CounterRng rx(cfg.seed, g * kStreamBlock + 2 * i);
        CounterRng ry(cfg.seed, g * kStreamBlock + 2 * i + 1);
        record(e, unit_sample(S.spec, rx), unit_sample(S.spec, ry), ratios[i]);
      }
  }
  rep.equality_ratio = best_eq;
  rep.pass = rep.worst_slack <= cfg.tol;
  return rep;
}

InequalityReport phase_young_check(const ConvolutionStructure& S,
                                   const std::vector<Element>& xs,
                                   const std::vector<Element>& ys, double p, double q,
                                   int t_grid_size, double tol) {
  if (xs.empty() || xs.size() != ys.size())
    throw InvalidInput(
        "phase_young_check: xs and ys must be nonempty lists of equal length");
  if (t_grid_size < 1)
    throw InvalidInput("phase_young_check: t_grid_size must be >= 1");
  double sum = inv(p) + inv(q);
  if (!(p >= 1.0) || !(q >= 1.0) || sum < 1.0 - 1e-12)
    throw InvalidInput("phase_young_check: need p, q >= 1 with 1/p + 1/q >= 1");
  double rinv = sum - 1.0;
  double r = rinv <= 1e-12 ? kInf : 1.0 / rinv;

  Element acc = Element::zero(S.spec);
  for (size_t i = 0; i < xs.size(); ++i) acc += convolve(S, xs[i], ys[i]);
  double lhs = p_norm(acc, r);

  double best = -kInf, t0 = 0.0;
  for (int m = 0; m < t_grid_size; ++m) {
    double t = static_cast<double>(m) / t_grid_size;
    Element X = Element::zero(S.spec), Y = Element::zero(S.spec);
    for (size_t j = 0; j < xs.size(); ++j) {
      double phase = 2.0 * M_PI * static_cast<double>(j) * t;
      X += std::polar(1.0, phase) * xs[j];
      Y += std::polar(1.0, -phase) * ys[j];
    }
    double bound = S.k * p_norm(X, p) * p_norm(Y, q);
    if (bound > best) {
      best = bound;
      t0 = t;
    }
  }

  InequalityReport rep;
  rep.suite = "phase_young";
  rep.tol = tol;
  rep.cases_checked = t_grid_size;
  rep.semantics =
      "existence form: the phased product bound must hold at the best grid phase t0";
  rep.worst_slack = lhs - best;
  rep.pass = rep.worst_slack <= tol;
  std::vector<Element> wit = xs;
  wit.insert(wit.end(), ys.begin(), ys.end());
  rep.worst = make_case(
      {{"p", p}, {"q", q}, {"r", r}, {"t0", t0}, {"pairs", double(xs.size())}},
      std::move(wit), lhs, best, lhs - best, "witness lists xs then ys");
  return rep;
}

InequalityReport reverse_young2_check(const ConvolutionStructure& S, const Element& x,
                                      const Element& y, double r, double s, double t,
                                      double tol) {
  bool in_range = r > 0.0 && r <= 1.0 && s > 0.0 && s <= 1.0 && t > 0.0 && t <= 1.0;
  if (!in_range || std::abs(1.0 + 1.0 / r - (1.0 / s + 1.0 / t)) > 1e-9)
    throw InvalidInput(
        "reverse_young2_check: need 0 < r, s, t <= 1 with 1 + 1/r = 1/s + 1/t");
  check_psd(x, "reverse_young2_check");
  check_psd(y, "reverse_young2_check");
  double lam = S.spec->min_proj_trace();
  double lhs = p_norm(convolve(S, psd_power(x, r), psd_power(y, r)), r);
  double rhs = std::pow(lam, 1.0 / r - r) * S.k * std::pow(p_norm(x, t), r) *
               std::pow(p_norm(y, s), r);
  double scale = std::max(1.0, rhs);

  InequalityReport rep;
  rep.suite = "reverse_young2";
  rep.tol = tol;
  rep.cases_checked = 1;
  rep.semantics = "pass means lhs >= rhs - tol * max(1, rhs)";
  rep.worst_slack = (rhs - lhs) / scale;
  rep.pass = rep.worst_slack <= tol;
  rep.worst = make_case({{"r", r}, {"s", s}, {"t", t}, {"lambda", lam}}, {x, y}, lhs,
                        rhs, rep.worst_slack, "slack = (rhs - lhs)/max(1, rhs)");
  return rep;
}

InequalityReport sumset_check(const ConvolutionStructure& S, const Element& x,
                              const Element& y, double rank_tol, double tol) {
  check_psd(x, "sumset_check");
  check_psd(y, "sumset_check");
  Element Rx = range_projection(x, rank_tol);
  Element Ry = range_projection(y, rank_tol);
  double lhs = support(convolve(S, Rx, Ry), rank_tol);
  double sx = real_trace(Rx, "sumset_check");
  double sy = real_trace(Ry, "sumset_check");
  double rhs = std::max(sx, sy);

  InequalityReport rep;
  rep.suite = "sumset";
  rep.tol = tol;
  rep.cases_checked = 1;
  rep.semantics = "pass means S(R(x)*R(y)) >= max{S(x), S(y)} - tol";
  rep.worst_slack = rhs - lhs;
  rep.pass = rep.worst_slack <= tol;
  rep.worst = make_case({{"rank_tol", rank_tol}, {"S_x", sx}, {"S_y", sy}}, {x, y},
                        lhs, rhs, rhs - lhs);
  return rep;
}

InequalityReport qeci_check(const ConvolutionStructure& S, const Element& x,
                            const Element& y, std::optional<double> theta,
                            double tol) {
  if (theta && !(*theta >= 0.0 && *theta <= 1.0))
    throw InvalidInput("qeci_check: theta must lie in [0, 1]");
  check_normalized(x, S.k, "qeci_check");
  check_normalized(y, S.k, "qeci_check");
  double hx = entropy(x), hy = entropy(y);
  double hc = entropy(convolve(S, x, y));
  double rhs = theta ? *theta * hx + (1.0 - *theta) * hy : std::max(hx, hy);

  InequalityReport rep;
  rep.suite = "qeci";
  rep.tol = tol;
  rep.cases_checked = 1;
  rep.semantics = theta ? "pass means H(x*y) >= theta H(x) + (1-theta) H(y) - tol"
                        : "pass means H(x*y) >= max{H(x), H(y)} - tol";
  rep.worst_slack = rhs - hc;
  rep.pass = rep.worst_slack <= tol;
  std::vector<std::pair<std::string, double>> params = {
      {"H_x", hx}, {"H_y", hy}, {"H_conv", hc}};
  if (theta) params.emplace_back("theta", *theta);
  rep.worst = make_case(std::move(params), {x, y}, hc, rhs, rhs - hc);
  return rep;
}

InequalityReport qeci_triple_check(const ConvolutionStructure& S, const Element& x1,
                                   const Element& x2, const Element& x3,
                                   int association_order, double tol) {
  if (association_order != 0 && association_order != 1)
    throw InvalidInput("qeci_triple_check: association_order must be 0 or 1");
  check_normalized(x1, S.k, "qeci_triple_check");
  check_normalized(x2, S.k, "qeci_triple_check");
  check_normalized(x3, S.k, "qeci_triple_check");
  Element conv = association_order == 0
                     ? convolve(S, convolve(S, x1, x2), x3)
                     : convolve(S, x1, convolve(S, x2, x3));
  double h1 = entropy(x1), h2 = entropy(x2), h3 = entropy(x3);
  double hc = entropy(conv);
  double rhs = std::max({h1, h2, h3});

  InequalityReport rep;
  rep.suite = "qeci_triple";
  rep.tol = tol;
  rep.cases_checked = 1;
  rep.semantics =
      "pass means H of the triple convolution >= max of the three entropies - tol";
  rep.worst_slack = rhs - hc;
  rep.pass = rep.worst_slack <= tol;
  rep.worst = make_case({{"H_1", h1},
                         {"H_2", h2},
                         {"H_3", h3},
                         {"H_conv", hc},
                         {"association_order", double(association_order)}},
                        {x1, x2, x3}, hc, rhs, rhs - hc);
  return rep;
}

double smooth_entropy(const Element& x, double p, double eps, int budget,
                      std::uint64_t seed, Element* witness) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw InvalidInput("smooth_entropy: eps must lie in [0, 1]");
  if (!(p >= 1.0)) throw InvalidInput("smooth_entropy: p must lie in [1, inf]");
  check_psd(x, "smooth_entropy");
  double best = entropy(x);
  if (eps == 0.0) {
    if (witness) *witness = x;
    return best;
  }
  budget = std::max(budget, 1);
  Element best_y = x;
  double d = x.spec->fp_dim();
  double tr = real_trace(x, "smooth_entropy");

  auto try_start = [&](Element y) {
    double val = ascend_entropy(x, p, eps, y);
    if (val > best) {
      best = val;
      best_y = y;
    }
  };
  auto mix_toward = [&](const Element& target) {
    double dist = p_dist(target, x, p);
    double a = dist > eps ? (eps / dist) * (1.0 - 1e-12) : 1.0;
    return project_feasible(x, x + scaled(target - x, a), p, eps);
  };

  try_start(x);
  if (budget > 1)
    try_start(mix_toward(scaled(Element::identity(x.spec), tr / d)));
  if (budget > 2)
    try_start(mix_toward(scaled(Element::identity(x.spec), std::exp(-1.0))));
  for (int idx = 3; idx < budget; ++idx) {
    CounterRng rng(seed, idx);
    Element h = random_hermitian(x.spec, rng);
    double hn = p_norm(h, p);
    if (hn < 1e-300) continue;
    try_start(project_feasible(x, x + scaled(h, eps * rng.next_double() / hn), p, eps));
  }
  if (witness) *witness = best_y;
  return best;
}

double smooth_conv_entropy(const FNAlgebra& F, const Element& x, const Element& y,
                           double p, double q, double eps, double eta, int budget,
                           std::uint64_t seed, Element* witness_z,
                           Element* witness_w) {
  if (!(eps >= 0.0 && eps <= 1.0) || !(eta >= 0.0 && eta <= 1.0))
    throw InvalidInput("smooth_conv_entropy: eps and eta must lie in [0, 1]");
  if (!(p >= 1.0) || !(q >= 1.0))
    throw InvalidInput("smooth_conv_entropy: p and q must lie in [1, inf]");
  check_psd(x, "smooth_conv_entropy");
  check_psd(y, "smooth_conv_entropy");
  const ConvolutionStructure& S = F.S;
  int D = S.spec->coord_dim();

  double best = entropy(convolve(S, x, y));
  Element best_z = x, best_w = y;
  if (budget <= 1 || (eps == 0.0 && eta == 0.0)) {
    if (witness_z) *witness_z = best_z;
    if (witness_w) *witness_w = best_w;
    return best;
  }

  // descent directions from the chain rule through the structure tensor
  auto grads = [&](const Element& z, const Element& w, Element& gz, Element& gw) {
    Element G = entropy_gradient(convolve(S, z, w));
    CVector gc = coords(G), zc = coords(z), wc = coords(w);
    CVector A = CVector::Zero(D), B = CVector::Zero(D);
    const std::complex<double>* tp = S.tensor.data();
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) {
        std::complex<double> dot = 0.0;
        for (int c = 0; c < D; ++c) dot += tp[c] * std::conj(gc[c]);
        A[a] += wc[b] * dot;
        B[b] += zc[a] * dot;
        tp += D;
      }
    gz = hermitized(from_coords(z.spec, A.conjugate()));
    gw = hermitized(from_coords(w.spec, B.conjugate()));
  };

  auto descend = [&](Element z, Element w) {
    double fv = entropy(convolve(S, z, w));
    double step = 0.25 * std::max(std::max(eps, eta), 1e-6);
    for (int it = 0; it < 60; ++it) {
      Element gz, gw;
      grads(z, w, gz, gw);
      double gn = std::max(p_norm(gz, 2.0), p_norm(gw, 2.0));
      if (gn < 1e-14) break;
      bool improved = false;
      double s = step;
      for (int halve = 0; halve < 12; ++halve) {
        Element zc = project_feasible(x, z - scaled(gz, s / gn), p, eps);
        Element wc = project_feasible(y, w - scaled(gw, s / gn), q, eta);
        double fc = entropy(convolve(S, zc, wc));
        if (fc < fv - 1e-15) {
          z = zc;
          w = wc;
          fv = fc;
          step = std::min(s * 2.0, 1.0);
          improved = true;
          break;
        }
        s *= 0.5;
      }
      if (!improved) break;
    }
    if (fv < best) {
      best = fv;
      best_z = z;
      best_w = w;
    }
  };

  descend(x, y);
  for (int idx = 1; idx < budget; ++idx) {
    CounterRng rz(seed, 2 * static_cast<std::uint64_t>(idx));
    CounterRng rw(seed, 2 * static_cast<std::uint64_t>(idx) + 1);
    Element hz = random_hermitian(x.spec, rz);
    Element hw = random_hermitian(y.spec, rw);
    double nz = p_norm(hz, p), nw = p_norm(hw, q);
    Element z = nz > 1e-300
                    ? project_feasible(x, x + scaled(hz, eps * rz.next_double() / nz),
                                       p, eps)
                    : x;
    Element w = nw > 1e-300
                    ? project_feasible(y, y + scaled(hw, eta * rw.next_double() / nw),
                                       q, eta)
                    : y;
    descend(std::move(z), std::move(w));
  }
  if (witness_z) *witness_z = best_z;
  if (witness_w) *witness_w = best_w;
  return best;
}

InequalityReport smooth_qeci_check(const FNAlgebra& F, const Element& x,
                                   const Element& y, double p, double q, double eps,
                                   double eta, int budget, std::uint64_t seed,
                                   double tol) {
  const ConvolutionStructure& S = F.S;
  if (!(eps >= 0.0 && eps <= 1.0) || !(eta >= 0.0 && eta <= 1.0))
    throw InvalidInput("smooth_qeci_check: eps and eta must lie in [0, 1]");
  if (!(p >= 1.0) || !(q >= 1.0))
    throw InvalidInput("smooth_qeci_check: p and q must lie in [1, inf]");
  check_normalized(x, S.k, "smooth_qeci_check");
  check_normalized(y, S.k, "smooth_qeci_check");
  double d = S.spec->fp_dim();
  double lam = S.spec->min_proj_trace();
  double k = S.k;
  double cap = 1.0 / ((d + 1.0) * (1.0 + k * (d + 1.0)));
  if (eps + eta > cap + 1e-15) {
    std::ostringstream os;
    os << "smooth_qeci_check: outside theorem scope: requires eps+eta <= "
          "1/((d+1)(1+k(d+1))) = "
       << cap << ", got " << eps + eta;
    throw ScopeError(os.str());
  }
  double h = 1.0 / k + d + 1.0;

  Element wz, ww;
  double hx = smooth_entropy(x, p, eps, budget, seed);
  double hy = smooth_entropy(y, q, eta, budget, seed + 1);
  double hc = smooth_conv_entropy(F, x, y, p, q, eps, eta, budget, seed + 2, &wz, &ww);
  double bx = continuity_bound(d, lam, h, p, eps);
  double by = continuity_bound(d, lam, h, q, eta);
  double bconv = conv_continuity_bound(d, lam, h, k, p, q, eps, eta);

  double worst = -kInf, theta_worst = 0.0, rhs_worst = 0.0;
  for (double theta : {0.0, 0.5, 1.0}) {
    double thr = theta * hx + (1.0 - theta) * hy - (theta * bx + (1.0 - theta) * by) -
                 bconv;
    if (thr - hc > worst) {
      worst = thr - hc;
      theta_worst = theta;
      rhs_worst = thr;
    }
  }

  InequalityReport rep;
  rep.suite = "smooth_qeci";
  rep.tol = tol;
  rep.seed = seed;
  rep.cases_checked = 3;
  rep.semantics = "falsification only: pass means no counterexample found within budget";
  rep.worst_slack = worst;
  rep.pass = worst <= tol;
  rep.worst = make_case(
      {{"p", p},
       {"q", q},
       {"eps", eps},
       {"eta", eta},
       {"theta", theta_worst},
       {"H_eps_x", hx},
       {"H_eta_y", hy},
       {"H_conv_upper", hc},
       {"bound_x", bx},
       {"bound_y", by},
       {"bound_conv", bconv}},
      {wz, ww}, hc, rhs_worst, worst,
      "derivation: entropic convolution inequality at theta, entropy continuity on "
      "each smoothed operand, convolution-entropy continuity; trace bound h = 1/k + "
      "d + 1");
  return rep;
}

double continuity_bound(double d, double lambda, double h, double p, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw InvalidInput("continuity_bound: eps must lie in [0, 1]");
  if (!(d > 0.0) || !(lambda > 0.0) || !(h > 0.0))
    throw InvalidInput("continuity_bound: need d, lambda, h > 0");
  if (!(p >= 1.0)) throw InvalidInput("continuity_bound: p must lie in [1, inf]");
  if (eps == 0.0) return 0.0;
  double a = std::pow(d, 1.0 - inv(p));
  double r = 2.0 * h / lambda;
  return a * std::abs(eps * std::log(eps)) +
         a * eps *
             (1.0 + (1.0 - inv(p)) * std::abs(std::log(d)) + std::abs(std::log(d)) +
              2.0 * std::abs(std::log(r)));
}

double conv_continuity_bound(double d, double lambda, double h, double k, double p,
                             double q, double eps, double eta) {
  if (!(eps >= 0.0 && eps <= 1.0) || !(eta >= 0.0 && eta <= 1.0))
    throw InvalidInput("conv_continuity_bound: eps and eta must lie in [0, 1]");
  if (!(k > 0.0)) throw InvalidInput("conv_continuity_bound: k must be positive");
  if (!(p >= 1.0) || !(q >= 1.0))
    throw InvalidInput("conv_continuity_bound: p and q must lie in [1, inf]");
  if (eps + eta > 1.0 / (k * h * (d + 1.0)) + 1e-15)
    throw InvalidInput("conv_continuity_bound: requires eps+eta <= 1/(k h (d+1))");
  double eps1 = k * h *
                (std::pow(d, 1.0 - inv(p)) * eps + std::pow(d, 1.0 - inv(q)) * eta);
  return continuity_bound(d, lambda, k * h * h, 1.0, eps1);
}

std::pair<double, double> tlogt_bound(double s, double t, double r) {
  if (!(0.0 <= s && s <= t && t <= r))
    throw InvalidInput("tlogt_bound: need 0 <= s <= t <= r");
  if (!(t - s <= r / 2.0 + 1e-15))
    throw InvalidInput("tlogt_bound: need t - s <= r/2");
  double lhs = std::abs(xlogx(t) - xlogx(s));
  double u = t - s;
  double rhs = u > 0.0 ? -u * std::log(u) + 2.0 * std::abs(std::log(r)) * u : 0.0;
  return {lhs, rhs};
}

}  // namespace qconv
