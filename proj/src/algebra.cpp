#include "qconv/algebra.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace qconv {

AlgebraSpec::AlgebraSpec(std::vector<BlockDim> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw InvalidInput("AlgebraSpec: no blocks");
  offsets_.reserve(blocks_.size());
  lambda_ = blocks_[0].delta;
  for (const auto& b : blocks_) {
    if (b.n < 1) throw InvalidInput("AlgebraSpec: block size must be >= 1");
    if (!(b.delta > 0.0)) throw InvalidInput("AlgebraSpec: block weight must be > 0");
    offsets_.push_back(coord_dim_);
    coord_dim_ += b.n * b.n;
    fp_dim_ += b.delta * b.n;
    lambda_ = std::min(lambda_, b.delta);
    if (b.n != 1) commutative_ = false;
  }
}

bool AlgebraSpec::operator==(const AlgebraSpec& o) const {
  if (blocks_.size() != o.blocks_.size()) return false;
  for (size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].n != o.blocks_[i].n || blocks_[i].delta != o.blocks_[i].delta)
      return false;
  return true;
}

SpecPtr make_spec(std::vector<BlockDim> blocks) {
  return std::make_shared<const AlgebraSpec>(std::move(blocks));
}

Element Element::zero(const SpecPtr& spec) {
  Element x{spec, {}};
  x.block.reserve(spec->num_blocks());
  for (const auto& b : spec->blocks()) x.block.push_back(CMatrix::Zero(b.n, b.n));
  return x;
}

Element Element::identity(const SpecPtr& spec) {
  Element x{spec, {}};
  x.block.reserve(spec->num_blocks());
  for (const auto& b : spec->blocks()) x.block.push_back(CMatrix::Identity(b.n, b.n));
  return x;
}

void require_same_spec(const Element& a, const Element& b, const char* where) {
  if (a.spec == b.spec) return;
  if (a.spec && b.spec && *a.spec == *b.spec) return;
  throw InvalidInput(std::string(where) + ": elements live on different algebras");
}

Element& Element::operator+=(const Element& o) {
  require_same_spec(*this, o, "operator+");
  for (size_t i = 0; i < block.size(); ++i) block[i] += o.block[i];
  return *this;
}

Element& Element::operator-=(const Element& o) {
  require_same_spec(*this, o, "operator-");
  for (size_t i = 0; i < block.size(); ++i) block[i] -= o.block[i];
  return *this;
}

Element& Element::operator*=(std::complex<double> c) {
  for (auto& m : block) m *= c;
  return *this;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator*(std::complex<double> c, Element a) { return a *= c; }

std::complex<double> trace(const Element& x) {
  std::complex<double> t = 0.0;
  for (int i = 0; i < x.spec->num_blocks(); ++i)
    t += x.spec->blocks()[i].delta * x.block[i].trace();
  return t;
}

std::complex<double> inner(const Element& x, const Element& y) {
  require_same_spec(x, y, "inner");
  std::complex<double> t = 0.0;
  for (int i = 0; i < x.spec->num_blocks(); ++i)
    t += x.spec->blocks()[i].delta * (y.block[i].adjoint() * x.block[i]).trace();
  return t;
}

Element adjoint(const Element& x) {
  Element out = x;
  for (auto& m : out.block) m = m.adjoint().eval();
  return out;
}

Element mul(const Element& x, const Element& y) {
  require_same_spec(x, y, "mul");
  Element out = x;
  for (size_t i = 0; i < out.block.size(); ++i) out.block[i] = x.block[i] * y.block[i];
  return out;
}

double max_abs(const Element& x) {
  double m = 0.0;
  for (const auto& b : x.block) m = std::max(m, max_abs(b));
  return m;
}

double p_norm(const Element& x, double p) {
  if (!(p > 0.0)) throw InvalidInput("p_norm: requires p > 0");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& b : x.block) m = std::max(m, spectral_norm(b));
    return m;
  }
  double acc = 0.0;
  for (int i = 0; i < x.spec->num_blocks(); ++i) {
    Eigen::JacobiSVD<CMatrix> svd(x.block[i]);
    const auto& sv = svd.singularValues();
    double s = 0.0;
    for (Eigen::Index j = 0; j < sv.size(); ++j) s += std::pow(sv[j], p);
    acc += x.spec->blocks()[i].delta * s;
  }
  return std::pow(acc, 1.0 / p);
}

double p_dist(const Element& x, const Element& y, double p) { return p_norm(x - y, p); }

namespace {
double xlogx(double t) { return t <= 0.0 ? 0.0 : t * std::log(t); }
}  // namespace

double entropy(const Element& x) {
  double h = 0.0;
  for (int i = 0; i < x.spec->num_blocks(); ++i) {
    EigH eig = eig_hermitian(x.block[i]);
    double tol = kPsdTol * (1.0 + max_abs(x.block[i]));
    for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
      double v = eig.values[j];
      if (v < -tol) {
        std::ostringstream os;
        os << "entropy: eigenvalue " << v << " below -" << tol;
        throw NumericError(os.str());
      }
      h -= x.spec->blocks()[i].delta * xlogx(std::max(v, 0.0));
    }
  }
  return h;
}

Element range_projection(const Element& x, double rank_tol) {
  double cut = rank_tol * p_norm(x, std::numeric_limits<double>::infinity());
  Element out = Element::zero(x.spec);
  for (int i = 0; i < x.spec->num_blocks(); ++i) {
    EigH eig = eig_hermitian(x.block[i]);
    CMatrix p = CMatrix::Zero(x.block[i].rows(), x.block[i].cols());
    for (Eigen::Index j = 0; j < eig.values.size(); ++j)
      if (eig.values[j] > cut)
        p += eig.vectors.col(j) * eig.vectors.col(j).adjoint();
    out.block[i] = p;
  }
  return out;
}

double support(const Element& x, double rank_tol) {
  return trace(range_projection(x, rank_tol)).real();
}

Element normalize_trace(const Element& x, double target) {
  std::complex<double> t = trace(x);
  double scale = 1.0 + max_abs(x);
  if (std::abs(t) <= 1e-14 * scale)
    throw NumericError("normalize_trace: trace is zero");
  if (std::abs(t.imag()) > 1e-10 * std::abs(t) + 1e-14 * scale)
    throw NumericError("normalize_trace: trace is not real");
  if (t.real() <= 0.0) throw NumericError("normalize_trace: trace is not positive");
  Element out = x;
  out *= std::complex<double>(target / t.real(), 0.0);
  return out;
}

Element random_element(const SpecPtr& spec, CounterRng& rng) {
  Element x = Element::zero(spec);
  for (auto& m : x.block)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.next_cgaussian();
  return x;
}

Element random_hermitian(const SpecPtr& spec, CounterRng& rng) {
  Element g = random_element(spec, rng);
  for (auto& m : g.block) m = ((m + m.adjoint()) * 0.5).eval();
  return g;
}

Element random_positive(const SpecPtr& spec, CounterRng& rng) {
  Element g = random_element(spec, rng);
  for (auto& m : g.block) m = (m * m.adjoint()).eval();
  return g;
}

Element psd_clamp(const Element& x) {
  Element out = x;
  for (auto& m : out.block) {
    EigH eig = eig_hermitian(m);
    RVector v = eig.values.cwiseMax(0.0);
    m = eig.vectors * v.cast<std::complex<double>>().asDiagonal() * eig.vectors.adjoint();
  }
  return out;
}

Element psd_power(const Element& x, double a) {
  Element out = x;
  for (auto& m : out.block) m = matrix_function(m, [a](double t) { return std::pow(t, a); });
  return out;
}

CVector coords(const Element& x) {
  CVector v(x.spec->coord_dim());
  for (int i = 0; i < x.spec->num_blocks(); ++i) {
    double w = std::sqrt(x.spec->blocks()[i].delta);
    int n = x.spec->blocks()[i].n;
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        v[x.spec->coord_index(i, s, t)] = w * x.block[i](s, t);
  }
  return v;
}

Element from_coords(const SpecPtr& spec, const CVector& c) {
  if (c.size() != spec->coord_dim())
    throw InvalidInput("from_coords: coordinate dimension mismatch");
  Element x = Element::zero(spec);
  for (int i = 0; i < spec->num_blocks(); ++i) {
    double w = 1.0 / std::sqrt(spec->blocks()[i].delta);
    int n = spec->blocks()[i].n;
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        x.block[i](s, t) = w * c[spec->coord_index(i, s, t)];
  }
  return x;
}

std::vector<std::pair<double, double>> weighted_spectrum(const Element& x) {
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < x.spec->num_blocks(); ++i) {
    EigH eig = eig_hermitian(x.block[i]);
    for (Eigen::Index j = 0; j < eig.values.size(); ++j)
      out.emplace_back(eig.values[j], x.spec->blocks()[i].delta);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  return out;
}

}  // namespace qconv
