#include "qconv/json_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace qconv {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw InvalidInput("json: " + msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double num_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::complex<double> parse_entry(const Json& e, const char* what) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    bad(std::string(what) + " entries must be [re, im] pairs");
  return {e[0].get<double>(), e[1].get<double>()};
}

Json entry_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

void format_number(std::ostream& os, const Json& j) {
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (std::isnan(v)) {
      os << "null";
      return;
    }
    if (std::isinf(v)) {
      os << (v > 0 ? "1e999" : "-1e999");
      return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
    // bare integers stay floats on re-parse
    if (!std::strpbrk(buf, ".eE")) os << ".0";
  } else if (j.is_number_unsigned()) {
    os << j.get<std::uint64_t>();
  } else {
    os << j.get<std::int64_t>();
  }
}

void dump_rec(std::ostream& os, const Json& j, int indent, int depth) {
  std::string pad(static_cast<size_t>(indent) * depth, ' ');
  std::string pad1(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad1 << Json(it.key()).dump() << ": ";
        dump_rec(os, it.value(), indent, depth + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool scalars = true;
      for (const auto& e : j)
        if (e.is_structured()) scalars = false;
      if (scalars && j.size() <= 8) {
        os << "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          dump_rec(os, j[i], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad1;
        dump_rec(os, j[i], indent, depth + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::string:
      os << j.dump();
      return;
    case Json::value_t::boolean:
      os << (j.get<bool>() ? "true" : "false");
      return;
    case Json::value_t::null:
      os << "null";
      return;
    default:
      format_number(os, j);
      return;
  }
}

void render_rec(std::ostream& os, const std::string& key, const Json& j, int depth);

void render_value(std::ostream& os, const Json& j) {
  if (j.is_number_float()) {
    format_number(os, j);
  } else if (j.is_string()) {
    os << j.get<std::string>();
  } else {
    os << j.dump();
  }
}

bool is_scalar_array(const Json& j) {
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

void render_rec(std::ostream& os, const std::string& key, const Json& j, int depth) {
  std::string pad(static_cast<size_t>(2) * depth, ' ');
  if (j.is_object()) {
    if (depth == 0)
      os << "## " << key << "\n";
    else
      os << pad << "- **" << key << "**\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      render_rec(os, it.key(), it.value(), depth + 1);
    return;
  }
  if (j.is_array() && !is_scalar_array(j)) {
    if (depth == 0)
      os << "## " << key << "\n";
    else
      os << pad << "- **" << key << "**\n";
    for (size_t i = 0; i < j.size(); ++i)
      render_rec(os, key + "[" + std::to_string(i) + "]", j[i], depth + 1);
    return;
  }
  os << pad << "- " << key << ": ";
  if (j.is_array()) {
    os << "[";
    for (size_t i = 0; i < j.size(); ++i) {
      if (i) os << ", ";
      render_value(os, j[i]);
    }
    os << "]";
  } else {
    render_value(os, j);
  }
  os << "\n";
}

}  // namespace

InputKind detect_input(const Json& j) {
  if (!j.is_object()) bad("top-level input must be an object");
  if (j.contains("rank") && j.contains("N")) return InputKind::ring;
  if (j.contains("order") && j.contains("table")) return InputKind::group;
  if (j.contains("theta")) return InputKind::theta_swap;
  if (j.contains("spec") && j.contains("tensor")) return InputKind::structure;
  if (j.contains("blocks")) return InputKind::spec;
  bad(
      "unrecognized input schema (expected a fusion ring, group table, theta-swap, "
      "convolution structure, or algebra spec)");
}

SpecPtr parse_spec(const Json& j) {
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array() || blocks.empty()) bad("'blocks' must be a nonempty array");
  std::vector<BlockDim> out;
  for (const auto& b : blocks) {
    int n = int_field(b, "n");
    double delta = num_field(b, "delta");
    if (n < 1) bad("block size n must be >= 1");
    if (!(delta > 0.0)) bad("block weight delta must be positive");
    out.push_back({n, delta});
  }
  return make_spec(std::move(out));
}

Element parse_element(const SpecPtr& spec, const Json& j) {
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array() || static_cast<int>(blocks.size()) != spec->num_blocks())
    bad("element block count does not match the algebra");
  Element x = Element::zero(spec);
  for (int i = 0; i < spec->num_blocks(); ++i) {
    int n = spec->blocks()[i].n;
    const Json& b = blocks[i];
    if (!b.is_array() || static_cast<int>(b.size()) != n * n)
      bad("element block " + std::to_string(i) + " must hold " +
          std::to_string(n * n) + " row-major entries");
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        x.block[i](s, t) = parse_entry(b[static_cast<size_t>(s) * n + t], "element");
  }
  return x;
}

GroupTable parse_group(const Json& j) {
  int order = int_field(j, "order");
  const Json& table = field(j, "table");
  if (order < 1) bad("'order' must be >= 1");
  if (!table.is_array() || static_cast<int>(table.size()) != order)
    bad("'table' must be an order x order integer matrix");
  GroupTable G;
  G.table.assign(order, std::vector<int>(order, 0));
  for (int g = 0; g < order; ++g) {
    const Json& row = table[g];
    if (!row.is_array() || static_cast<int>(row.size()) != order)
      bad("'table' must be an order x order integer matrix");
    for (int h = 0; h < order; ++h) {
      if (!row[h].is_number_integer()) bad("'table' entries must be integers");
      G.table[g][h] = row[h].get<int>();
    }
  }
  return G;
}

FusionRing parse_ring(const Json& j) {
  int rank = int_field(j, "rank");
  if (rank < 1) bad("'rank' must be >= 1");
  const Json& dual = field(j, "dual");
  if (!dual.is_array() || static_cast<int>(dual.size()) != rank)
    bad("'dual' must be a 1-indexed permutation of length rank");
  FusionRing R;
  R.rank = rank;
  R.dual.resize(rank);
  for (int i = 0; i < rank; ++i) {
    if (!dual[i].is_number_integer()) bad("'dual' entries must be integers");
    int v = dual[i].get<int>();
    if (v < 1 || v > rank) bad("'dual' entries must lie in 1..rank");
    R.dual[i] = v - 1;
  }
  const Json& N = field(j, "N");
  if (!N.is_array() || static_cast<int>(N.size()) != rank)
    bad("'N' must be a rank x rank x rank integer array");
  R.N.assign(static_cast<size_t>(rank) * rank * rank, 0);
  for (int k = 0; k < rank; ++k) {
    const Json& plane = N[k];
    if (!plane.is_array() || static_cast<int>(plane.size()) != rank)
      bad("'N' must be a rank x rank x rank integer array");
    for (int q = 0; q < rank; ++q) {
      const Json& row = plane[q];
      if (!row.is_array() || static_cast<int>(row.size()) != rank)
        bad("'N' must be a rank x rank x rank integer array");
      for (int i = 0; i < rank; ++i) {
        if (!row[i].is_number_integer()) bad("'N' entries must be integers");
        R.at(k, q, i) = row[i].get<long long>();
      }
    }
  }
  return R;
}

ConvolutionStructure parse_structure(const Json& j) {
  ConvolutionStructure S;
  S.spec = parse_spec(field(j, "spec"));
  S.k = num_field(j, "k");
  if (!(S.k > 0.0)) bad("'k' must be positive");
  int D = S.spec->coord_dim();
  S.tensor.assign(static_cast<size_t>(D) * D * D, 0.0);
  const Json& triplets = field(j, "tensor");
  if (!triplets.is_array()) bad("'tensor' must be a list of [a, b, c, re, im] rows");
  for (const auto& t : triplets) {
    if (!t.is_array() || t.size() != 5 || !t[0].is_number_integer() ||
        !t[1].is_number_integer() || !t[2].is_number_integer() ||
        !t[3].is_number() || !t[4].is_number())
      bad("'tensor' rows must be [a, b, c, re, im] with integer coordinates");
    int a = t[0].get<int>(), b = t[1].get<int>(), c = t[2].get<int>();
    if (a < 0 || a >= D || b < 0 || b >= D || c < 0 || c >= D)
      bad("'tensor' coordinates out of range");
    S.at(a, b, c) += std::complex<double>(t[3].get<double>(), t[4].get<double>());
  }
  return S;
}

Antipode parse_antipode(const SpecPtr& spec, const Json& j) {
  Antipode rho;
  const Json& perm = field(j, "perm");
  if (!perm.is_array() || static_cast<int>(perm.size()) != spec->num_blocks())
    bad("antipode 'perm' must be a 0-indexed permutation over the blocks");
  for (const auto& e : perm) {
    if (!e.is_number_integer()) bad("antipode 'perm' entries must be integers");
    rho.perm.push_back(e.get<int>());
  }
  if (j.contains("unitary")) {
    const Json& us = j.at("unitary");
    if (!us.is_array() || static_cast<int>(us.size()) != spec->num_blocks())
      bad("antipode 'unitary' must list one matrix per block");
    for (int i = 0; i < spec->num_blocks(); ++i) {
      int n = spec->blocks()[i].n;
      const Json& u = us[i];
      if (!u.is_array() || static_cast<int>(u.size()) != n * n)
        bad("antipode unitary " + std::to_string(i) + " must hold " +
            std::to_string(n * n) + " row-major entries");
      CMatrix V(n, n);
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          V(s, t) = parse_entry(u[static_cast<size_t>(s) * n + t], "antipode unitary");
      rho.unitary.push_back(std::move(V));
    }
  } else {
    for (int i = 0; i < spec->num_blocks(); ++i)
      rho.unitary.push_back(CMatrix::Identity(spec->blocks()[i].n, spec->blocks()[i].n));
  }
  return rho;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open input file: " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("malformed JSON in " + path);
  return j;
}

Json spec_json(const AlgebraSpec& spec) {
  Json blocks = Json::array();
  for (const auto& b : spec.blocks()) blocks.push_back({{"n", b.n}, {"delta", b.delta}});
  return Json{{"blocks", blocks}};
}

Json element_json(const Element& x) {
  Json blocks = Json::array();
  for (const auto& m : x.block) {
    Json b = Json::array();
    for (int s = 0; s < m.rows(); ++s)
      for (int t = 0; t < m.cols(); ++t) b.push_back(entry_json(m(s, t)));
    blocks.push_back(std::move(b));
  }
  return Json{{"blocks", blocks}};
}

Json ring_json(const FusionRing& R) {
  Json dual = Json::array();
  for (int v : R.dual) dual.push_back(v + 1);
  Json N = Json::array();
  for (int k = 0; k < R.rank; ++k) {
    Json plane = Json::array();
    for (int q = 0; q < R.rank; ++q) {
      Json row = Json::array();
      for (int i = 0; i < R.rank; ++i) row.push_back(R.at(k, q, i));
      plane.push_back(std::move(row));
    }
    N.push_back(std::move(plane));
  }
  return Json{{"rank", R.rank}, {"dual", dual}, {"N", N}};
}

Json validation_json(const RingValidation& v) {
  Json failures = Json::array();
  for (const auto& f : v.failures)
    failures.push_back({{"kind", f.kind},
                        {"idx", f.idx},
                        {"lhs", f.lhs},
                        {"rhs", f.rhs},
                        {"text", f.render()}});
  return Json{{"valid", v.valid}, {"failures", failures}, {"truncated", v.truncated}};
}

Json criterion_json(const CriterionReport& r) {
  const char* verdict = r.verdict == CriterionVerdict::pass          ? "pass"
                        : r.verdict == CriterionVerdict::violation    ? "violation"
                                                                      : "inconclusive";
  Json witness = Json::array();
  for (int i = 0; i < r.witness.size(); ++i) witness.push_back(entry_json(r.witness[i]));
  return Json{{"verdict", verdict},
              {"best_value", r.best_value},
              {"witness", witness},
              {"tol", r.tol},
              {"budget", r.budget},
              {"starts_used", r.starts_used},
              {"seed", r.seed},
              {"hermiticity_residual", r.hermiticity_residual},
              {"eigen_residual", r.eigen_residual},
              {"fallback_used", r.fallback_used}};
}

Json axiom_report_json(const AxiomReport& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    Json o{{"name", v.name}, {"pass", v.pass}, {"worst_slack", v.worst_slack}};
    if (!v.note.empty()) o["note"] = v.note;
    verdicts.push_back(std::move(o));
  }
  return Json{{"all_pass", r.all_pass},
              {"tol", r.tol},
              {"samples", r.samples},
              {"seed", r.seed},
              {"verdicts", verdicts}};
}

Json inequality_report_json(const InequalityReport& r) {
  Json o{{"suite", r.suite},
         {"pass", r.pass},
         {"worst_slack", r.worst_slack},
         {"tol", r.tol},
         {"samples", r.samples},
         {"seed", r.seed},
         {"cases_checked", r.cases_checked},
         {"semantics", r.semantics}};
  if (r.equality_ratio) o["equality_ratio"] = *r.equality_ratio;
  if (r.worst) {
    Json params = Json::object();
    for (const auto& [name, value] : r.worst->params) params[name] = value;
    Json witness = Json::array();
    for (const auto& w : r.worst->witness) witness.push_back(element_json(w));
    Json c{{"params", params},
           {"lhs", r.worst->lhs},
           {"rhs", r.worst->rhs},
           {"slack", r.worst->slack},
           {"witness", witness}};
    if (!r.worst->note.empty()) c["note"] = r.worst->note;
    o["worst_case"] = std::move(c);
  }
  return o;
}

Json manifest_json(const RunManifest& m) {
  return Json{{"command", m.command}, {"inputs", m.inputs},
              {"seed", m.seed},       {"tol", m.tol},
              {"threads", m.threads}, {"samples", m.samples},
              {"budget", m.budget},   {"format", m.format},
              {"version", kToolVersion}};
}

std::string dump_json(const Json& j, int indent) {
  std::ostringstream os;
  dump_rec(os, j, indent, 0);
  os << "\n";
  return os.str();
}

std::string render_markdown(const Json& j) {
  std::ostringstream os;
  os << "# qconv report\n";
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_rec(os, it.key(), it.value(), 0);
  } else {
    render_rec(os, "value", j, 0);
  }
  return os.str();
}

}  // namespace qconv
