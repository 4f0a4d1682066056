// invdec: command-line front end. Every subcommand prints one JSON document
// on stdout. Exit codes: 0 success, 2 input/validation error, 3 numerical
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "invdec/document.hpp"
#include "invdec/invdec.hpp"

using namespace invdec;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ComplexMat load_matrix(const std::string& path) {
  return parse_document(read_input(path)).matrix;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Json part_json(const SimplePart& p) {
  Json j;
  j["matrix"] = matrix_to_json(p.mat);
  j["square"] = complex_to_json(p.square);
  j["lambda"] = p.lambda;
  j["beta"] = p.beta;
  return j;
}

Json parts_json(std::span<const SimplePart> parts) {
  Json a = Json::array();
  for (const SimplePart& p : parts) a.push_back(part_json(p));
  return a;
}

Json residuals_json(const DecompositionResiduals& r) {
  Json j;
  j["sum_error"] = r.sum_error;
  j["max_commutator"] = r.max_commutator;
  j["max_square_error"] = r.max_square_error;
  return j;
}

Json group_json(const ComplexMat& u) {
  const GroupResiduals r = group_residuals(u);
  Json j;
  j["U"] = matrix_to_json(u);
  j["unitarity"] = r.unitarity;
  j["det_error"] = r.det_error;
  return j;
}

LogBranch parse_branch(const std::string& text) {
  LogBranch b;
  if (text.empty()) return b;
  std::stringstream ss(text);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 3) break;
    try {
      std::size_t used = 0;
      b.k[i] = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "--branch expects three integers k1,k2,k3");
    }
    ++i;
  }
  if (i != 3 || std::getline(ss, item, ',')) {
    throw Error(ErrorCode::InvalidInput, "--branch expects three integers k1,k2,k3");
  }
  return b;
}

void apply_overrides(Tolerances& tol, const std::vector<std::string>& overrides) {
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidInput, "--tol-override expects key=value, got '" + o + "'");
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(o.substr(eq + 1), &used);
      if (used != o.size() - eq - 1) throw std::invalid_argument(o);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "bad tolerance value in '" + o + "'");
    }
    tol.set(o.substr(0, eq), value);
  }
}

struct Options {
  std::string input = "-";
  std::string method;
  std::string branch;
  bool nxn = false;
  bool require_su3 = false;
  std::string task = "all";
  std::string regime = "all";
  std::size_t n = 1000;
  std::uint64_t seed = 42;
  int a = 1;
  double theta = 0.0;
  double scale = 1.0;
  std::string kind = "group";
  std::string format = "json";
  std::vector<std::string> overrides;
};

Json cmd_decompose(const Options& o, const Tolerances& tol) {
  const ComplexMat m = load_matrix(o.input);
  const std::string method = o.method.empty() ? "eigen" : o.method;
  Json j;
  j["command"] = "decompose";
  if (o.require_su3 || method == "closed-form") (void)AlgebraElement::make(m, tol);
  if (o.nxn) {
    const std::vector<SimplePart> parts = decompose_nxn(m, tol);
    j["method"] = "eigen";
    j["parts"] = parts_json(parts);
    j["residuals"] = residuals_json(residuals(parts, m));
    return j;
  }
  if (m.dim() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "decompose needs a 3x3 matrix (or --nxn)");
  }
  InvariantDecomposition d;
  if (method == "eigen") {
    d = decompose_via_eigen(m, tol);
  } else if (method == "closed-form") {
    d = decompose_closed_form(AlgebraElement::make(m, tol), tol);
  } else {
    throw Error(ErrorCode::InvalidInput, "--method must be eigen or closed-form");
  }
  j["method"] = method;
  j["parts"] = parts_json(d.parts);
  j["residuals"] = residuals_json(residuals(d));
  return j;
}

Json cmd_exp(const Options& o, const Tolerances& tol) {
  const ComplexMat m = load_matrix(o.input);
  const std::string method = o.method.empty() ? "invariant" : o.method;
  Json j;
  j["command"] = "exp";
  j["method"] = method;
  if (method == "invariant") {
    j["result"] = group_json(exp_su3(AlgebraElement::make(m, tol), tol).mat());
  } else if (method == "reference") {
    j["result"] = group_json(exp_reference(m));
  } else if (method == "both") {
    const ComplexMat inv = exp_su3(AlgebraElement::make(m, tol), tol).mat();
    const ComplexMat ref = exp_reference(m);
    j["invariant"] = group_json(inv);
    j["reference"] = group_json(ref);
    j["distance"] = compare(inv, ref);
  } else {
    throw Error(ErrorCode::InvalidInput, "--method must be invariant, reference or both");
  }
  return j;
}

Json cmd_log(const Options& o, const Tolerances& tol) {
  const ComplexMat m = load_matrix(o.input);
  const std::string method = o.method.empty() ? "invariant" : o.method;
  const LogBranch branch = parse_branch(o.branch);
  Json j;
  j["command"] = "log";
  j["method"] = method;
  ComplexMat l;
  if (method == "invariant") {
    const LogResult r = log_decomposed(GroupElement::make(m, tol), tol);
    l = branch_log(std::span<const SimplePart, 3>(r.parts), branch);
    j["branch"] = branch.k;
    j["parts"] = parts_json(r.parts);
    j["factor_signs"] = r.signs;
  } else if (method == "reference") {
    if (!o.branch.empty()) {
      throw Error(ErrorCode::InvalidInput, "--branch applies to the invariant method only");
    }
    l = log_reference(m, tol);
  } else {
    throw Error(ErrorCode::InvalidInput, "--method must be invariant or reference");
  }
  j["log"] = matrix_to_json(l);
  j["roundtrip_error"] = compare(exp_reference(l), m);
  return j;
}

Json cmd_factor(const Options& o, const Tolerances& tol) {
  const GroupElement u = GroupElement::make(load_matrix(o.input), tol);
  const GradeDecomposition g = split_HS(u, tol);
  const Factorization f = factorize(u, tol);
  Json j;
  j["command"] = "factor";
  j["route"] = to_string(f.route);
  j["closing_factor"] = f.closing + 1;
  Json factors = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json fj;
    fj["U"] = matrix_to_json(f.factors[i]);
    if (f.parts[i]) {
      fj["beta"] = f.parts[i]->beta;
    } else {
      fj["beta"] = nullptr;
    }
    factors.push_back(std::move(fj));
  }
  j["factors"] = std::move(factors);
  j["grades"]["g0"] = matrix_to_json(g.g0);
  j["grades"]["g2"] = matrix_to_json(g.g2);
  j["grades"]["g4"] = matrix_to_json(g.g4);
  j["grades"]["g6"] = matrix_to_json(g.g6);
  Json h = Json::array();
  Json s = Json::array();
  for (int i = 0; i < 3; ++i) {
    h.push_back(matrix_to_json(g.H[i]));
    s.push_back(matrix_to_json(g.S[i]));
  }
  j["H"] = std::move(h);
  j["S"] = std::move(s);
  j["product_residual"] = compare(f.factors[0] * f.factors[1] * f.factors[2], u.mat());
  return j;
}

template <typename T, typename Parse>
std::vector<T> select(const std::string& name, const std::string& what, const auto& all,
                      Parse parse) {
  if (name == "all") return std::vector<T>(all.begin(), all.end());
  const auto v = parse(name);
  if (!v) throw Error(ErrorCode::InvalidInput, "unknown " + what + " '" + name + "'");
  return {*v};
}

int cmd_bench(const Options& o, const Tolerances& tol) {
  if (o.format != "json" && o.format != "table") {
    throw Error(ErrorCode::InvalidInput, "--format must be json or table");
  }
  const auto tasks = select<BenchTask>(o.task, "task", kBenchTasks,
                                       [](const std::string& s) { return parse_task(s); });
  const auto regimes = select<BenchRegime>(
      o.regime, "regime", kBenchRegimes, [](const std::string& s) { return parse_regime(s); });
  if (o.n < kMinBenchSamples) {
    throw Error(ErrorCode::InvalidInput,
                "--n must be at least " + std::to_string(kMinBenchSamples));
  }
  std::vector<BenchReport> reports;
  for (BenchTask t : tasks) {
    for (BenchRegime r : regimes) {
      for (BenchReport& rep : run_bench_methods(t, r, o.n, RngSeed{o.seed}, tol)) {
        reports.push_back(std::move(rep));
      }
    }
  }
  if (o.format == "table") {
    std::cout << format_table(reports);
    return 0;
  }
  Json j;
  j["command"] = "bench";
  j["reports"] = Json::array();
  for (const BenchReport& r : reports) j["reports"].push_back(to_json(r));
  emit(j);
  return 0;
}

Json cmd_gellmann(const Options& o) {
  const GroupElement u = exp_gellmann(o.a, o.theta);
  Json j;
  j["command"] = "gellmann";
  j["a"] = o.a;
  j["theta"] = o.theta;
  j["lambda"] = matrix_to_json(gellmann(o.a));
  if (o.a <= 7) {
    j["rho_plus"] = matrix_to_json(rho(o.a));
    j["rho_minus"] = matrix_to_json(rho(-o.a));
  }
  j["result"] = group_json(u.mat());
  return j;
}

Json cmd_sample(const Options& o) {
  MatrixDocument doc;
  Rng rng(RngSeed{o.seed});
  if (o.kind == "group") {
    doc.matrix = random_group(rng).mat();
  } else if (o.kind == "algebra") {
    doc.matrix = random_algebra(rng, o.scale).mat();
  } else {
    throw Error(ErrorCode::InvalidInput, "--kind must be group or algebra");
  }
  doc.metadata["kind"] = o.kind;
  doc.metadata["seed"] = std::to_string(o.seed);
  if (o.kind == "algebra") doc.metadata["scale"] = Json(o.scale).dump();
  return to_json(doc);
}

int fail(const Error& e) {
  emit(error_document(e));
  return is_input_error(e.code()) ? kExitInput : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant decomposition of su(3) elements: exp, log, factorization."};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--tol-override", o.overrides, "Override a tolerance, key=value (repeatable)");

  auto input_opt = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Matrix document path, or - for stdin");
  };

  CLI::App* decompose = app.add_subcommand("decompose", "Split B into commuting simple parts");
  input_opt(decompose);
  decompose->add_option("--method", o.method, "eigen (default) or closed-form");
  decompose->add_flag("--nxn", o.nxn, "General n x n decomposition");
  decompose->add_flag("--require-su3", o.require_su3, "Reject inputs outside su(3)");

  CLI::App* exp = app.add_subcommand("exp", "Exponential of an su(3) element");
  input_opt(exp);
  exp->add_option("--method", o.method, "invariant (default), reference or both");

  CLI::App* log = app.add_subcommand("log", "Logarithm of an SU(3) element");
  input_opt(log);
  log->add_option("--method", o.method, "invariant (default) or reference");
  log->add_option("--branch", o.branch, "Branch integers k1,k2,k3");

  CLI::App* factor = app.add_subcommand("factor", "Euler factors, grades and invariants of U");
  input_opt(factor);

  CLI::App* bench = app.add_subcommand("bench", "Timing and accuracy against the oracle");
  bench->add_option("--task", o.task, "exp, log, factorize or all");
  bench->add_option("--regime", o.regime,
                    "generic, small-angle, near-degenerate, boundary or all");
  bench->add_option("--n", o.n, "Samples per report (at least 100)");
  bench->add_option("--seed", o.seed, "RNG seed");
  bench->add_option("--format", o.format, "json (default) or table");

  CLI::App* gm = app.add_subcommand("gellmann", "exp(i theta lambda_a) in closed form");
  gm->add_option("--a", o.a, "Generator index 1..8");
  gm->add_option("--theta", o.theta, "Angle in radians");

  CLI::App* sample = app.add_subcommand("sample", "Emit a seeded random matrix document");
  sample->add_option("--kind", o.kind, "group (default) or algebra");
  sample->add_option("--seed", o.seed, "RNG seed");
  sample->add_option("--scale", o.scale, "Algebra scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(Error(ErrorCode::InvalidInput, e.what()));
  }

  try {
    Tolerances tol;
    apply_overrides(tol, o.overrides);
    if (decompose->parsed()) emit(cmd_decompose(o, tol));
    else if (exp->parsed()) emit(cmd_exp(o, tol));
    else if (log->parsed()) emit(cmd_log(o, tol));
    else if (factor->parsed()) emit(cmd_factor(o, tol));
    else if (bench->parsed()) return cmd_bench(o, tol);
    else if (gm->parsed()) emit(cmd_gellmann(o));
    else if (sample->parsed()) emit(cmd_sample(o));
  } catch (const Error& e) {
    return fail(e);
  }
  return 0;
}
