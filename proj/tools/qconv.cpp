#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qconv/convolution.hpp"
#include "qconv/errors.hpp"
#include "qconv/fusion_ring.hpp"
#include "qconv/groups.hpp"
#include "qconv/inequalities.hpp"
#include "qconv/json_io.hpp"

namespace {

using namespace qconv;

struct Globals {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int threads = 1;
  std::string out;
  std::string format = "json";
};

int emit(const Json& report, const Globals& g, int code) {
  std::string text =
      g.format == "markdown" ? render_markdown(report) : dump_json(report);
  if (g.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream f(g.out);
    if (!f) throw InvalidInput("cannot write output file: " + g.out);
    f << text;
  }
  return code;
}

struct BuiltInput {
  InputKind kind = InputKind::spec;
  std::string kind_name;
  SpecPtr spec;
  std::optional<ConvolutionStructure> S;
  std::optional<Antipode> rho;
  std::optional<FusionRing> ring;
  std::optional<GroupTable> group;
  Json raw;
};

BuiltInput load_input(const std::string& path) {
  BuiltInput in;
  in.raw = load_json_file(path);
  in.kind = detect_input(in.raw);
  switch (in.kind) {
    case InputKind::ring:
      in.kind_name = "fusion_ring";
      in.ring = parse_ring(in.raw);
      break;
    case InputKind::group:
      in.kind_name = "group";
      in.group = parse_group(in.raw);
      break;
    case InputKind::theta_swap: {
      in.kind_name = "theta_swap";
      if (!in.raw.contains("n") || !in.raw["n"].is_number_integer())
        throw InvalidInput("theta-swap input needs integer field 'n'");
      if (!in.raw["theta"].is_number())
        throw InvalidInput("theta-swap input needs numeric field 'theta'");
      in.S = build_theta_swap(in.raw["theta"].get<double>(), in.raw["n"].get<int>());
      in.spec = in.S->spec;
      break;
    }
    case InputKind::structure:
      in.kind_name = "structure";
      in.S = parse_structure(in.raw);
      in.spec = in.S->spec;
      if (in.raw.contains("antipode"))
        in.rho = parse_antipode(in.spec, in.raw.at("antipode"));
      break;
    case InputKind::spec:
      in.kind_name = "algebra_spec";
      in.spec = parse_spec(in.raw);
      break;
  }
  return in;
}

const ConvolutionStructure& need_structure(BuiltInput& in) {
  if (!in.S && in.ring) {
    auto [S, rho] = fusion_bialgebra_parts(*in.ring);
    in.S = std::move(S);
    in.rho = std::move(rho);
    in.spec = in.S->spec;
  }
  if (!in.S && in.group) {
    in.S = group_structure(*in.group);
    in.rho = group_antipode(*in.group);
    in.spec = in.S->spec;
  }
  if (!in.S)
    throw ScopeError(
        "this command needs a convolution structure; the input provides only an "
        "algebra spec");
  return *in.S;
}

FNAlgebra need_fn(BuiltInput& in, const CheckOptions& opt) {
  const ConvolutionStructure& S = need_structure(in);
  if (!in.rho)
    throw ScopeError(
        "this command needs an antipode (Frobenius structure); the input has none");
  return assemble_fn_algebra(S, *in.rho, opt);
}

Element input_element(BuiltInput& in, const char* key, double trace_target,
                      std::uint64_t stream, const Globals& g) {
  if (in.raw.contains(key)) return parse_element(in.spec, in.raw.at(key));
  CounterRng rng(g.seed, stream);
  return normalize_trace(random_positive(in.spec, rng), trace_target);
}

std::map<std::string, double> parse_params(const std::string& s) {
  static const char* allowed[] = {"p",     "q", "eps", "eta", "theta",
                                  "h",     "s", "t",   "r",   "budget"};
  std::map<std::string, double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("--params must be comma-separated key=value pairs");
    std::string key = item.substr(0, eq);
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw InvalidInput("unknown parameter '" + key + "'");
    try {
      out[key] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InvalidInput("parameter '" + key + "' has a non-numeric value");
    }
  }
  return out;
}

double param_or(const std::map<std::string, double>& m, const std::string& key,
                double fallback) {
  auto it = m.find(key);
  return it == m.end() ? fallback : it->second;
}

CVector random_unit_cvector(int n, CounterRng& rng) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.next_cgaussian();
  double nn = v.norm();
  if (nn < 1e-300) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / nn;
}

Json cvector_json(const CVector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i)
    out.push_back(Json::array({v[i].real(), v[i].imag()}));
  return out;
}

RunManifest make_manifest(const std::string& command, const std::string& path,
                          const Globals& g, int samples, int budget) {
  RunManifest m;
  m.command = command;
  m.inputs = {path};
  m.seed = g.seed;
  m.tol = g.tol;
  m.threads = g.threads;
  m.samples = samples;
  m.budget = budget;
  m.format = g.format;
  return m;
}

int cmd_validate(const std::string& path, const Globals& g) {
  BuiltInput in = load_input(path);
  Json report{{"manifest", manifest_json(make_manifest("validate", path, g, 0, 0))},
              {"input_kind", in.kind_name}};
  int code = 0;
  switch (in.kind) {
    case InputKind::ring: {
      RingValidation vr = validate(*in.ring);
      report["validation"] = validation_json(vr);
      code = vr.valid ? 0 : 1;
      break;
    }
    case InputKind::group: {
      try {
        validate_group(*in.group);
        report["valid"] = true;
      } catch (const InvalidInput& e) {
        report["valid"] = false;
        report["failure"] = e.what();
        code = 1;
      }
      break;
    }
    case InputKind::spec: {
      report["spec"] = spec_json(*in.spec);
      report["properties"] = Json{{"coord_dim", in.spec->coord_dim()},
                                  {"fp_dim", in.spec->fp_dim()},
                                  {"min_proj_trace", in.spec->min_proj_trace()},
                                  {"commutative", in.spec->commutative()}};
      report["valid"] = true;
      break;
    }
    case InputKind::theta_swap:
      report["valid"] = true;  // construction verified unitarity
      break;
    case InputKind::structure: {
      CheckOptions opt{200, g.seed, g.tol, g.threads};
      AxiomReport rep = check_good_convolution(*in.S, opt);
      report["axioms"] = axiom_report_json(rep);
      code = rep.all_pass ? 0 : 1;
      break;
    }
  }
  return emit(report, g, code);
}

int cmd_categorify(const std::string& path, int budget, const Globals& g) {
  BuiltInput in = load_input(path);
  if (!in.ring) throw InvalidInput("categorify requires a fusion ring input");
  RingValidation vr = validate(*in.ring);
  if (!vr.valid)
    throw InvalidInput("categorify: ring does not validate: " +
                       vr.failures.front().render());
  const FusionRing& R = *in.ring;

  CriterionReport cr = search_comult_violation(R, budget, g.seed);

  int trials = std::max(64, budget * 16);
  double schur_min = std::numeric_limits<double>::infinity();
  CVector w1, w2, w3;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(g.seed, 0x6B6B0000ull + t);
    CVector v1 = random_unit_cvector(R.rank, rng);
    CVector v2 = random_unit_cvector(R.rank, rng);
    CVector v3 = random_unit_cvector(R.rank, rng);
    double val = schur_value(R, v1, v2, v3);
    if (val < schur_min) {
      schur_min = val;
      w1 = v1;
      w2 = v2;
      w3 = v3;
    }
  }
  bool schur_violation = schur_min < -cr.tol;

  bool obstructed = cr.verdict == CriterionVerdict::violation || schur_violation;
  const char* comult_verdict = cr.verdict == CriterionVerdict::pass ? "pass"
                               : cr.verdict == CriterionVerdict::violation
                                   ? "violation"
                                   : "inconclusive";
  Json report{
      {"manifest", manifest_json(make_manifest("categorify", path, g, 0, budget))},
      {"input_kind", in.kind_name},
      {"comult_criterion", criterion_json(cr)},
      {"schur_criterion", Json{{"min_value", schur_min},
                               {"trials", trials},
                               {"violation", schur_violation},
                               {"witness",
                                Json{{"v1", cvector_json(w1)},
                                     {"v2", cvector_json(w2)},
                                     {"v3", cvector_json(w3)}}}}},
      {"obstructed", obstructed},
      {"summary", obstructed ? "obstruction certified: the ring admits no unitary "
                               "categorification"
                             : std::string("no obstruction found (comult criterion: ") +
                                   comult_verdict + ")"}};
  return emit(report, g, obstructed ? 1 : 0);
}

int cmd_axioms(const std::string& path, int samples, const Globals& g) {
  BuiltInput in = load_input(path);
  const ConvolutionStructure& S = need_structure(in);
  CheckOptions opt{samples, g.seed, g.tol, g.threads};
  AxiomReport rep = check_good_convolution(S, opt);
  rep.add(check_associativity(S, opt));
  if (in.rho) {
    AxiomReport anti = check_antipode(S, *in.rho, opt);
    bool structure_ok = !anti.verdicts.empty() && anti.verdicts.front().pass;
    for (auto& v : anti.verdicts) rep.add(std::move(v));
    if (structure_ok) rep.add(check_frobenius(S, *in.rho, opt));
  }
  Json report{
      {"manifest", manifest_json(make_manifest("axioms", path, g, samples, 0))},
      {"input_kind", in.kind_name},
      {"has_antipode", static_cast<bool>(in.rho)},
      {"axioms", axiom_report_json(rep)}};
  return emit(report, g, rep.all_pass ? 0 : 1);
}

int cmd_inequalities(const std::string& path, const std::string& suite, int samples,
                     std::optional<double> theta, double p, double q, int t_grid,
                     double rank_tol, const Globals& g) {
  BuiltInput in = load_input(path);
  const ConvolutionStructure& S = need_structure(in);
  std::string command = "inequalities --suite " + suite;

  InequalityReport agg;
  agg.tol = g.tol;
  agg.seed = g.seed;

  auto fold = [&](const InequalityReport& r) {
    agg.suite = r.suite;
    agg.cases_checked += r.cases_checked;
    if (!agg.worst || r.worst_slack > agg.worst_slack) {
      agg.worst_slack = r.worst_slack;
      agg.worst = r.worst;
      agg.semantics = r.semantics;
    }
    agg.pass = agg.pass && r.pass;
  };

  if (suite == "young") {
    SweepConfig cfg;
    cfg.samples = samples > 0 ? samples : 500;
    cfg.seed = g.seed;
    cfg.tol = g.tol;
    cfg.threads = g.threads;
    agg = young_sweep(S, cfg);
  } else if (suite == "reverse-young") {
    int n = samples > 0 ? samples : 200;
    agg.samples = n;
    const double triples[3][3] = {
        {0.5, 2.0 / 3.0, 2.0 / 3.0}, {0.75, 6.0 / 7.0, 6.0 / 7.0}, {1.0, 1.0, 1.0}};
    for (int i = 0; i < n; ++i) {
      CounterRng rx(g.seed, 2 * static_cast<std::uint64_t>(i));
      CounterRng ry(g.seed, 2 * static_cast<std::uint64_t>(i) + 1);
      Element x = random_positive(S.spec, rx);
      Element y = random_positive(S.spec, ry);
      for (const auto& tr : triples)
        fold(reverse_young2_check(S, x, y, tr[0], tr[1], tr[2], g.tol));
    }
  } else if (suite == "sumset") {
    int n = samples > 0 ? samples : 200;
    agg.samples = n;
    for (int i = 0; i < n; ++i) {
      CounterRng rx(g.seed, 2 * static_cast<std::uint64_t>(i));
      CounterRng ry(g.seed, 2 * static_cast<std::uint64_t>(i) + 1);
      fold(sumset_check(S, random_positive(S.spec, rx), random_positive(S.spec, ry),
                        rank_tol, g.tol));
    }
  } else if (suite == "qeci") {
    int n = samples > 0 ? samples : 500;
    agg.samples = n;
    for (int i = 0; i < n; ++i) {
      CounterRng rx(g.seed, 2 * static_cast<std::uint64_t>(i));
      CounterRng ry(g.seed, 2 * static_cast<std::uint64_t>(i) + 1);
      Element x = normalize_trace(random_positive(S.spec, rx), 1.0 / S.k);
      Element y = normalize_trace(random_positive(S.spec, ry), 1.0 / S.k);
      fold(qeci_check(S, x, y, theta, g.tol));
    }
  } else if (suite == "phase-young") {
    std::vector<Element> xs, ys;
    if (in.raw.contains("xs") && in.raw.contains("ys")) {
      for (const auto& e : in.raw.at("xs")) xs.push_back(parse_element(in.spec, e));
      for (const auto& e : in.raw.at("ys")) ys.push_back(parse_element(in.spec, e));
    } else {
      for (int i = 0; i < 2; ++i) {
        CounterRng rx(g.seed, 100 + i);
        CounterRng ry(g.seed, 200 + i);
        Element x = random_element(S.spec, rx);
        x *= std::complex<double>(1.0 / p_norm(x, 2.0), 0.0);
        Element y = random_element(S.spec, ry);
        y *= std::complex<double>(1.0 / p_norm(y, 2.0), 0.0);
        xs.push_back(std::move(x));
        ys.push_back(std::move(y));
      }
    }
    agg = phase_young_check(S, xs, ys, p, q, t_grid, g.tol);
  } else {
    throw InvalidInput("unknown suite '" + suite +
                       "' (known: young, reverse-young, sumset, qeci, phase-young)");
  }

  Json report{
      {"manifest",
       manifest_json(make_manifest(command, path, g, agg.samples, 0))},
      {"input_kind", in.kind_name},
      {"algebra", spec_json(*S.spec)},
      {"inequality", inequality_report_json(agg)}};
  return emit(report, g, agg.pass ? 0 : 1);
}

int cmd_entropy(const std::string& path, const std::string& op,
                const std::string& params_str, int budget, const Globals& g) {
  BuiltInput in = load_input(path);
  if (!in.spec) need_structure(in);  // ring and group inputs carry no spec yet
  auto params = parse_params(params_str);
  double p = param_or(params, "p", 2.0);
  double q = param_or(params, "q", 2.0);
  double eps = param_or(params, "eps", 0.0);
  double eta = param_or(params, "eta", 0.0);
  if (params.count("budget")) budget = static_cast<int>(params.at("budget"));
  std::string command = "entropy --op " + op;
  Json report{{"manifest", manifest_json(make_manifest(command, path, g, 0, budget))},
              {"input_kind", in.kind_name}};
  int code = 0;

  if (op == "entropy") {
    Element x = input_element(in, "x", 1.0, 10, g);
    report["H"] = entropy(x);
    report["trace"] = trace(x).real();
  } else if (op == "smooth") {
    Element x = input_element(in, "x", 1.0, 10, g);
    Element wit;
    double v = smooth_entropy(x, p, eps, budget, g.seed, &wit);
    report["H_smooth"] = v;
    report["H_x"] = entropy(x);
    report["params"] = Json{{"p", p}, {"eps", eps}, {"budget", budget}};
    report["witness"] = element_json(wit);
    report["witness_distance"] = p_dist(wit, x, p);
  } else if (op == "conv-smooth") {
    CheckOptions opt{200, g.seed, g.tol, g.threads};
    FNAlgebra F = need_fn(in, opt);
    double target = 1.0 / F.S.k;
    Element x = input_element(in, "x", target, 10, g);
    Element y = input_element(in, "y", target, 11, g);
    Element wz, ww;
    double v = smooth_conv_entropy(F, x, y, p, q, eps, eta, budget, g.seed, &wz, &ww);
    report["H_conv_smooth_upper"] = v;
    report["H_conv"] = entropy(convolve(F.S, x, y));
    report["params"] =
        Json{{"p", p}, {"q", q}, {"eps", eps}, {"eta", eta}, {"budget", budget}};
    report["witness_z"] = element_json(wz);
    report["witness_w"] = element_json(ww);
    report["semantics"] = "upper bound on an infimum; falsification use only";
  } else if (op == "smooth-qeci") {
    CheckOptions opt{200, g.seed, g.tol, g.threads};
    FNAlgebra F = need_fn(in, opt);
    double target = 1.0 / F.S.k;
    Element x = input_element(in, "x", target, 10, g);
    Element y = input_element(in, "y", target, 11, g);
    InequalityReport rep =
        smooth_qeci_check(F, x, y, p, q, eps, eta, budget, g.seed, g.tol);
    report["inequality"] = inequality_report_json(rep);
    code = rep.pass ? 0 : 1;
  } else if (op == "bounds") {
    double d = in.spec ? in.spec->fp_dim() : 0.0;
    if (!in.spec) throw InvalidInput("bounds requires an input with an algebra spec");
    double lam = in.spec->min_proj_trace();
    double k = in.S ? in.S->k : 1.0;
    double h = param_or(params, "h", 1.0 / k + d + 1.0);
    report["params"] = Json{{"d", d},   {"lambda", lam}, {"h", h},  {"k", k},
                            {"p", p},   {"q", q},        {"eps", eps},
                            {"eta", eta}};
    report["entropy_continuity_bound"] = continuity_bound(d, lam, h, p, eps);
    if (in.S)
      report["conv_entropy_continuity_bound"] =
          conv_continuity_bound(d, lam, h, k, p, q, eps, eta);
    if (params.count("s") && params.count("t") && params.count("r")) {
      auto [lhs, rhs] = tlogt_bound(params.at("s"), params.at("t"), params.at("r"));
      report["tlogt"] = Json{{"lhs", lhs}, {"rhs", rhs}};
    }
  } else {
    throw InvalidInput("unknown op '" + op +
                       "' (known: entropy, smooth, conv-smooth, smooth-qeci, bounds)");
  }
  return emit(report, g, code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional quantum convolution laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "random seed (u64)")->capture_default_str();
  app.add_option("--tol", g.tol, "numeric tolerance")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for sweeps")
      ->capture_default_str();
  app.add_option("--out", g.out, "write the report to this path instead of stdout");
  app.add_option("--format", g.format, "report format")
      ->check(CLI::IsMember({"json", "markdown"}))
      ->capture_default_str();

  std::string path, suite, op, params;
  int budget = 64, samples = 0, t_grid = 128;
  double p = 2.0, q = 2.0, rank_tol = 1e-8;
  std::optional<double> theta;
  double theta_val = 0.0;

  auto* validate_cmd =
      app.add_subcommand("validate", "validate a fusion ring, group, spec, or structure");
  validate_cmd->add_option("path", path, "input JSON file")->required();

  auto* categorify_cmd = app.add_subcommand(
      "categorify", "run the categorification obstruction criteria on a fusion ring");
  categorify_cmd->add_option("path", path, "input JSON file")->required();
  categorify_cmd->add_option("--budget", budget, "optimizer starts")
      ->capture_default_str();

  auto* axioms_cmd = app.add_subcommand(
      "axioms", "check the convolution and antipode axioms on sampled inputs");
  axioms_cmd->add_option("path", path, "input JSON file")->required();
  axioms_cmd->add_option("--samples", samples, "samples per axiom (default 200)");

  auto* ineq_cmd =
      app.add_subcommand("inequalities", "run an inequality suite on the structure");
  ineq_cmd->add_option("path", path, "input JSON file")->required();
  ineq_cmd->add_option("--suite", suite,
                       "young | reverse-young | sumset | qeci | phase-young")
      ->required();
  ineq_cmd->add_option("--samples", samples, "sample count (0 = suite default)");
  auto* theta_opt =
      ineq_cmd->add_option("--theta", theta_val, "qeci interpolation parameter");
  ineq_cmd->add_option("--p", p, "exponent p for phase-young")->capture_default_str();
  ineq_cmd->add_option("--q", q, "exponent q for phase-young")->capture_default_str();
  ineq_cmd->add_option("--t-grid", t_grid, "phase grid size for phase-young")
      ->capture_default_str();
  ineq_cmd->add_option("--rank-tol", rank_tol, "range projection tolerance")
      ->capture_default_str();

  auto* entropy_cmd =
      app.add_subcommand("entropy", "entropy, smooth entropy, and continuity bounds");
  entropy_cmd->add_option("path", path, "input JSON file")->required();
  entropy_cmd
      ->add_option("--op", op, "entropy | smooth | conv-smooth | smooth-qeci | bounds")
      ->required();
  entropy_cmd->add_option("--params", params,
                          "comma-separated key=value pairs (p,q,eps,eta,h,s,t,r,budget)");
  entropy_cmd->add_option("--budget", budget, "optimizer starts")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int c = app.exit(e);
    return c == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(path, g);
    if (*categorify_cmd) return cmd_categorify(path, budget, g);
    if (*axioms_cmd) return cmd_axioms(path, samples > 0 ? samples : 200, g);
    if (*ineq_cmd) {
      if (*theta_opt) theta = theta_val;
      return cmd_inequalities(path, suite, samples, theta, p, q, t_grid, rank_tol, g);
    }
    if (*entropy_cmd) return cmd_entropy(path, op, params, budget, g);
    return 2;
  } catch (const ScopeError& e) {
    std::cerr << "scope error: " << e.what() << "\n";
    return 2;
  } catch (const BuildError& e) {
    std::cerr << "axiom failure: " << e.what() << "\n";
    return 1;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
