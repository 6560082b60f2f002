#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "chtrace/algebra_json.hpp"
#include "chtrace/decompose.hpp"
#include "chtrace/errors.hpp"
#include "chtrace/generic_matrices.hpp"
#include "chtrace/root_data.hpp"
#include "chtrace/trace_algebra.hpp"
#include "chtrace/uq_sl2.hpp"

namespace chtrace::cli {

namespace {

constexpr const char* kSchema = "chtrace/1";

struct RunConfig {
  bool as_json = false;
  bool allow_inconclusive = false;
  int ell = 3;
  int r = 2;
  int trials = 20;
  int jobs = 1;
  std::uint64_t seed = 1;
  DecomposeTolerances decompose;
  sl2::Tolerances rep;
};

// CHTRACE_TOL_<NAME> overrides; a non-positive or unparsable value is an error.
void env_tolerance(const char* name, double& slot) {
  const char* v = std::getenv(name);
  if (!v) return;
  char* end = nullptr;
  const double x = std::strtod(v, &end);
  require(end != v && *end == '\0' && std::isfinite(x) && x > 0, ErrorKind::InvalidParameter,
          std::string(name) + " must be a positive number");
  slot = x;
}

void load_env(RunConfig& cfg) {
  env_tolerance("CHTRACE_TOL_RELATION", cfg.rep.relation);
  env_tolerance("CHTRACE_TOL_SCALAR", cfg.rep.scalar);
  cfg.decompose.scalar = cfg.rep.scalar;
  env_tolerance("CHTRACE_TOL_GRAM", cfg.decompose.gram);
  env_tolerance("CHTRACE_TOL_CLUSTER", cfg.decompose.cluster);
  env_tolerance("CHTRACE_TOL_RANK", cfg.decompose.rank);
  env_tolerance("CHTRACE_TOL_COMMUTE", cfg.decompose.commute);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

void emit(std::ostream& out, json j) {
  j["schema"] = kSchema;
  out << j.dump(2) << "\n";
}

int verdict_exit(Verdict v, bool allow_inconclusive) {
  switch (v) {
    case Verdict::Pass: return kExitPass;
    case Verdict::Fail: return kExitInvalid;
    case Verdict::Inconclusive: return allow_inconclusive ? kExitPass : kExitInconclusive;
  }
  return kExitInvalid;
}

void require_sl2_ell(int ell) {
  require(validate_ell(build_root_datum('A', 1), ell), ErrorKind::InvalidParameter,
          "ell=" + std::to_string(ell) + " is not admissible: ell must be odd and at least 3");
}

std::string vec_text(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + "]";
}

// ------------------------------------------------------------ commands

int cmd_predict(const std::string& type, const RunConfig& cfg, std::ostream& out) {
  const auto table = predict(build_root_datum(type), cfg.ell);
  if (cfg.as_json) out << table.to_json().dump(2) << "\n";
  else out << table.to_text();
  return kExitPass;
}

int cmd_algebra_check(const std::string& path, int samples, const RunConfig& cfg, std::ostream& out) {
  const auto a = load_algebra(path);
  const auto axioms = check_axioms(a);
  const bool ch = axioms.ok() && ch_check(a, samples, cfg.seed);
  if (cfg.as_json) {
    json checks = json::array();
    for (const auto& c : axioms.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    emit(out, {{"dim", a.dim()}, {"ch_degree", a.ch_degree()}, {"axioms", checks}, {"cayley_hamilton", ch}});
  } else {
    out << "dim=" << a.dim() << " ch_degree=" << a.ch_degree() << " field=" << a.field().name() << "\n";
    for (const auto& c : axioms.checks)
      out << c.name << ": " << (c.passed ? "ok" : "FAILED " + c.witness) << "\n";
    out << "cayley_hamilton: " << (ch ? "ok" : "FAILED") << "\n";
  }
  return axioms.ok() && ch ? kExitPass : kExitInvalid;
}

int cmd_algebra_radical(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto a = load_algebra(path);
  const auto rad = radical(a);
  if (cfg.as_json) {
    json basis = json::array();
    for (const auto& v : rad) basis.push_back(vec_to_json(v));
    emit(out, {{"dim", a.dim()}, {"radical_dim", rad.size()}, {"basis", basis}});
  } else {
    out << "dim=" << a.dim() << " radical_dim=" << rad.size() << "\n";
    for (const auto& v : rad) out << vec_text(v) << "\n";
  }
  return kExitPass;
}

int cmd_algebra_blocks(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto a = load_algebra(path);
  BlockOptions opts;
  opts.seed = cfg.seed;
  opts.cluster_gap = cfg.decompose.cluster;
  const auto spec = block_decompose(a, opts);
  if (cfg.as_json) {
    json blocks = json::array();
    for (const auto& b : spec.blocks) blocks.push_back({{"k", b.k}, {"h", b.h}});
    emit(out, {{"dim", a.dim()}, {"ch_degree", a.ch_degree()}, {"blocks", blocks}});
  } else {
    out << "dim=" << a.dim() << " ch_degree=" << a.ch_degree() << " blocks=" << spec.to_string() << "\n";
  }
  return kExitPass;
}

int cmd_algebra_reduce(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto a = load_algebra(path);
  BlockOptions opts;
  opts.seed = cfg.seed;
  opts.cluster_gap = cfg.decompose.cluster;
  const auto red = reduced_trace(a, opts);
  if (cfg.as_json) {
    json j{{"dim", a.dim()}, {"trace", vec_to_json(red.trace)}, {"blocks", red.spectrum.to_string()}};
    j["multiple"] = red.multiple ? json(*red.multiple) : json(nullptr);
    emit(out, j);
  } else {
    out << "dim=" << a.dim() << " blocks=" << red.spectrum.to_string()
        << " multiple=" << (red.multiple ? std::to_string(*red.multiple) : "none") << "\n";
    out << "trace=" << vec_text(red.trace) << "\n";
  }
  return kExitPass;
}

int cmd_chcheck(int n, int size, const RunConfig& cfg, std::ostream& out) {
  require(n >= 1 && n <= 6, ErrorKind::InvalidParameter, "--n must lie in 1..6");
  require(size >= 1, ErrorKind::InvalidParameter, "--size must be positive");
  const auto rep = ch_multilinear_trials(n, static_cast<std::size_t>(size), cfg.trials, cfg.seed, cfg.jobs);
  const bool expect_vanish = size <= n;
  const bool ok = expect_vanish ? rep.vanished == rep.trials : rep.vanished < rep.trials;
  if (cfg.as_json) {
    emit(out, {{"n", n},
               {"size", size},
               {"trials", rep.trials},
               {"vanished", rep.vanished},
               {"first_failure", rep.first_failure},
               {"expect_vanish", expect_vanish},
               {"verdict", ok ? "pass" : "fail"}});
  } else {
    out << "n=" << n << " size=" << size << " trials=" << rep.trials << " vanished=" << rep.vanished
        << " first_failure=" << rep.first_failure << " expect_vanish=" << (expect_vanish ? "yes" : "no")
        << " verdict=" << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? kExitPass : kExitInvalid;
}

int cmd_matinv(const std::string& path, const std::string& literal, const std::string& field,
               const RunConfig& cfg, std::ostream& out) {
  require(path.empty() != literal.empty(), ErrorKind::InvalidParameter, "give exactly one of FILE or --matrix");
  json j;
  if (!path.empty()) {
    j = read_json_file(path);
  } else {
    try {
      j = json::parse(literal);
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidInput, std::string("--matrix: ") + e.what());
    }
  }
  const Mat m = mat_from_json(j, Field::parse(field));
  require(m.square(), ErrorKind::InvalidInput, "matrix must be square");
  const Mat inv = inverse(m);
  if (cfg.as_json) {
    emit(out, {{"n", m.rows()}, {"field", m.field().name()}, {"inverse", mat_to_json(inv)}});
  } else {
    for (std::size_t i = 0; i < inv.rows(); ++i) out << vec_text(inv.row(i)) << "\n";
  }
  return kExitPass;
}

int cmd_sl2_build(const std::string& chi_text, int branch, int highest, const RunConfig& cfg, std::ostream& out) {
  require_sl2_ell(cfg.ell);
  sl2::CyclicRep rep;
  if (highest >= 0) {
    rep = sl2::build_highest_weight_rep(cfg.ell, highest, cfg.rep);
  } else {
    require(!chi_text.empty(), ErrorKind::InvalidParameter, "--chi is required unless --highest-weight is given");
    rep = sl2::build_cyclic_rep(cfg.ell, sl2::parse_char(chi_text), branch, cfg.rep);
  }
  const auto res = sl2::relation_residuals(cfg.ell, rep.E, rep.F, rep.K);
  if (cfg.as_json) {
    json j = rep.to_json();
    j["residuals"] = {{"ke", res.ke}, {"kf", res.kf}, {"ef", res.ef}};
    out << j.dump(2) << "\n";
  } else {
    out << "ell=" << rep.ell << " dim=" << rep.E.rows() << " branch=" << rep.branch << "\n";
    out << "chi=" << rep.chi.to_string() << "\n";
    out << "lambda=" << rep.lambda << " g0=" << rep.g0 << " casimir=" << rep.casimir_value << "\n";
    out << "residuals ke=" << res.ke << " kf=" << res.kf << " ef=" << res.ef << "\n";
  }
  return kExitPass;
}

int report_verification(const VerificationReport& rep, const RunConfig& cfg, std::ostream& out) {
  if (cfg.as_json) out << rep.to_json().dump(2) << "\n";
  else out << rep.to_text();
  return verdict_exit(rep.overall(), cfg.allow_inconclusive);
}

int cmd_sl2_cg(const RunConfig& cfg, std::ostream& out) {
  require_sl2_ell(cfg.ell);
  require(cfg.trials >= 1, ErrorKind::InvalidParameter, "--trials must be positive");
  return report_verification(verify_clebsch_gordan(cfg.ell, cfg.seed, cfg.trials, cfg.jobs, cfg.decompose), cfg, out);
}

int cmd_sl2_branch(const RunConfig& cfg, std::ostream& out) {
  require_sl2_ell(cfg.ell);
  require(cfg.trials >= 1, ErrorKind::InvalidParameter, "--trials must be positive");
  return report_verification(verify_branching(cfg.ell, cfg.seed, cfg.trials, cfg.jobs, cfg.decompose), cfg, out);
}

int cmd_sl2_rescale(const RunConfig& cfg, std::ostream& out) {
  require_sl2_ell(cfg.ell);
  require(cfg.trials >= 1, ErrorKind::InvalidParameter, "--trials must be positive");
  return report_verification(verify_rescaled_restriction(cfg.ell, cfg.r, cfg.seed, cfg.trials, cfg.decompose), cfg,
                             out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Cayley-Hamilton trace algebras and quantum sl2 at roots of unity", "chtrace"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", cfg.as_json, "Emit JSON instead of text"); };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "Base seed")->capture_default_str(); };

  std::string type, path, literal, field = "Q", chi_text;
  int samples = 20, n = 2, size = 2, branch = 0, highest = -1;

  auto* predict_cmd = app.add_subcommand("predict", "Degree and multiplicity predictions");
  predict_cmd->add_option("--type", type, "Root system, e.g. A2, E6")->required();
  predict_cmd->add_option("--ell", cfg.ell, "Order of the root of unity")->required();
  add_json(predict_cmd);

  auto* algebra = app.add_subcommand("algebra", "Finite trace algebras from JSON files");
  algebra->require_subcommand(1);
  auto* alg_check = algebra->add_subcommand("check", "Trace axioms and the Cayley-Hamilton identity");
  auto* alg_radical = algebra->add_subcommand("radical", "Kernel of the trace form");
  auto* alg_blocks = algebra->add_subcommand("blocks", "Block spectrum {(k, h)}");
  auto* alg_reduce = algebra->add_subcommand("reduce", "Reduced trace");
  for (auto* sub : {alg_check, alg_radical, alg_blocks, alg_reduce}) {
    sub->add_option("file", path, "Algebra JSON file")->required();
    add_json(sub);
    add_seed(sub);
  }
  alg_check->add_option("--samples", samples, "Random Cayley-Hamilton samples")->capture_default_str();

  auto* chcheck = app.add_subcommand("chcheck", "Multilinear Cayley-Hamilton polynomial on random matrix tuples");
  chcheck->add_option("--n", n, "Degree of the identity")->capture_default_str();
  chcheck->add_option("--size", size, "Matrix size")->capture_default_str();
  chcheck->add_option("--trials", cfg.trials, "Number of tuples")->capture_default_str();
  chcheck->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  add_seed(chcheck);
  add_json(chcheck);

  auto* matinv = app.add_subcommand("matinv", "Exact inverse of a JSON matrix");
  matinv->add_option("file", path, "Matrix JSON file");
  matinv->add_option("--matrix", literal, "Matrix as an inline JSON array of rows");
  matinv->add_option("--field", field, "Q, cyc:ell or C64")->capture_default_str();
  add_json(matinv);

  auto* sl2_cmd = app.add_subcommand("sl2", "Cyclic modules of quantum sl2 at a root of unity");
  sl2_cmd->require_subcommand(1);
  auto* build = sl2_cmd->add_subcommand("build", "Build a cyclic module");
  build->add_option("--chi", chi_text, "Central character x,z,y");
  build->add_option("--branch", branch, "Fiber branch index")->capture_default_str();
  build->add_option("--highest-weight", highest, "Build the highest-weight module of weight eps^k instead");
  auto* cg = sl2_cmd->add_subcommand("cg", "Verify Clebsch-Gordan multiplicities");
  auto* branch_cmd = sl2_cmd->add_subcommand("branch", "Verify branching to the Borel subalgebra");
  auto* rescale = sl2_cmd->add_subcommand("rescale", "Verify r-fold direct sums");
  rescale->add_option("--r", cfg.r, "Number of copies (1..3)")->capture_default_str();
  for (auto* sub : {build, cg, branch_cmd, rescale}) {
    sub->add_option("--ell", cfg.ell, "Order of the root of unity")->capture_default_str();
    add_json(sub);
  }
  int rescale_trials = 1;
  rescale->add_option("--trials", rescale_trials, "Number of trials")->capture_default_str();
  for (auto* sub : {cg, branch_cmd, rescale}) {
    if (sub != rescale) sub->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
    sub->add_flag("--allow-inconclusive", cfg.allow_inconclusive, "Exit 0 when some trials are inconclusive");
    add_seed(sub);
  }
  for (auto* sub : {cg, branch_cmd}) sub->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    load_env(cfg);
    require(cfg.jobs >= 1, ErrorKind::InvalidParameter, "--jobs must be positive");
    if (*predict_cmd) return cmd_predict(type, cfg, out);
    if (*alg_check) return cmd_algebra_check(path, samples, cfg, out);
    if (*alg_radical) return cmd_algebra_radical(path, cfg, out);
    if (*alg_blocks) return cmd_algebra_blocks(path, cfg, out);
    if (*alg_reduce) return cmd_algebra_reduce(path, cfg, out);
    if (*chcheck) return cmd_chcheck(n, size, cfg, out);
    if (*matinv) return cmd_matinv(path, literal, field, cfg, out);
    if (*build) return cmd_sl2_build(chi_text, branch, highest, cfg, out);
    if (*cg) return cmd_sl2_cg(cfg, out);
    if (*branch_cmd) return cmd_sl2_branch(cfg, out);
    if (*rescale) {
      cfg.trials = rescale_trials;
      return cmd_sl2_rescale(cfg, out);
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitInvalid;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace chtrace::cli
