#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "chtrace/decompose.hpp"
#include "chtrace/errors.hpp"
#include "chtrace/root_data.hpp"

namespace chtrace {

using sl2::CentralCharZ0;

namespace {

struct Expected {
  int count, mult, irrep_dim;
};

long pred(const PredictionTable& t, const char* key) { return t.at(key).value.get_si(); }

PredictionTable a1_table(int ell) { return predict(build_root_datum('A', 1), ell); }

std::vector<TrialResult> run_trials(int trials, int jobs, const std::function<TrialResult(int)>& fn) {
  require(trials >= 0, ErrorKind::InvalidParameter, "trial count must be nonnegative");
  std::vector<TrialResult> out(static_cast<std::size_t>(trials));
  const int workers = std::clamp(jobs, 1, std::max(1, trials));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int t = next++; t < trials; t = next++) out[static_cast<std::size_t>(t)] = fn(t);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  std::sort(out.begin(), out.end(), [](const TrialResult& a, const TrialResult& b) { return a.seed < b.seed; });
  return out;
}

// Compares a conclusive report against the expected shape; returns an empty string on success.
std::string check_shape(const DecompositionReport& r, const Expected& e) {
  std::ostringstream os;
  if (r.total_dim() != r.dim) os << "dimensions sum to " << r.total_dim() << " not " << r.dim << "; ";
  if (static_cast<int>(r.summands.size()) != e.count)
    os << r.summands.size() << " summands, expected " << e.count << "; ";
  for (const auto& s : r.summands) {
    if (s.multiplicity != e.mult) os << "multiplicity " << s.multiplicity << ", expected " << e.mult << "; ";
    if (s.irrep_dim != e.irrep_dim) os << "irrep dim " << s.irrep_dim << ", expected " << e.irrep_dim << "; ";
  }
  return os.str();
}

double char_scale(const CentralCharZ0& c) {
  return std::max({1.0, std::abs(c.x), std::abs(c.z), std::abs(c.y)});
}

TrialResult inconclusive(TrialResult t, std::string why) {
  t.verdict = Verdict::Inconclusive;
  t.reason = "non-generic: " + std::move(why);
  return t;
}

void finish(TrialResult& t, const Expected& e, double z0_tol) {
  const auto& r = t.report;
  if (!r.conclusive) {
    t.verdict = Verdict::Inconclusive;
    t.reason = r.note;
    return;
  }
  std::string why = check_shape(r, e);
  if (t.z0_residual > z0_tol) why += "z0 residual " + std::to_string(t.z0_residual) + "; ";
  if (why.empty()) {
    t.verdict = Verdict::Pass;
  } else {
    t.verdict = Verdict::Fail;
    t.reason = why.substr(0, why.size() - 2);
  }
}

}  // namespace

json TrialResult::to_json() const {
  json cs = json::array();
  for (const auto& c : chars) cs.push_back(sl2::char_to_json(c));
  return json{{"seed", seed},
              {"verdict", chtrace::to_string(verdict)},
              {"reason", reason},
              {"chars", cs},
              {"z0_residual", z0_residual},
              {"report", report.to_json()}};
}

Verdict VerificationReport::overall() const {
  if (count(Verdict::Fail) > 0) return Verdict::Fail;
  if (count(Verdict::Inconclusive) > 0) return Verdict::Inconclusive;
  return Verdict::Pass;
}

int VerificationReport::count(Verdict v) const {
  return static_cast<int>(std::count_if(trials.begin(), trials.end(), [v](const TrialResult& t) { return t.verdict == v; }));
}

json VerificationReport::to_json() const {
  json ts = json::array();
  for (const auto& t : trials) ts.push_back(t.to_json());
  return json{{"schema", "chtrace/1"},
              {"experiment", experiment},
              {"ell", ell},
              {"r", r},
              {"seed", seed},
              {"expected", {{"count", expected_count}, {"multiplicity", expected_mult}, {"irrep_dim", expected_irrep_dim}}},
              {"trials", ts},
              {"pass", count(Verdict::Pass)},
              {"fail", count(Verdict::Fail)},
              {"inconclusive", count(Verdict::Inconclusive)},
              {"verdict", chtrace::to_string(overall())}};
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "experiment=" << experiment << " ell=" << ell << " r=" << r << " seed=" << seed
     << " trials=" << trials.size() << "\n";
  os << "expected count=" << expected_count << " multiplicity=" << expected_mult
     << " irrep_dim=" << expected_irrep_dim << "\n";
  for (const auto& t : trials) {
    os << "seed=" << t.seed << " " << chtrace::to_string(t.verdict) << " summands=" << t.report.summands.size();
    if (!t.report.summands.empty()) {
      os << " dims=";
      for (std::size_t i = 0; i < t.report.summands.size(); ++i)
        os << (i ? "," : "") << t.report.summands[i].irrep_dim << "x" << t.report.summands[i].multiplicity;
    }
    os << " z0_residual=" << t.z0_residual;
    if (!t.reason.empty()) os << " (" << t.reason << ")";
    os << "\n";
  }
  os << "pass=" << count(Verdict::Pass) << " fail=" << count(Verdict::Fail)
     << " inconclusive=" << count(Verdict::Inconclusive) << " verdict=" << chtrace::to_string(overall()) << "\n";
  return os.str();
}

// ------------------------------------------------------------ Clebsch-Gordan

std::pair<CentralCharZ0, CentralCharZ0> adversarial_pair() {
  return {CentralCharZ0{1, 1, 1}, CentralCharZ0{-1, 1, -1}};
}

TrialResult clebsch_gordan_trial(int ell, const CentralCharZ0& a, int branch_a, const CentralCharZ0& b, int branch_b,
                                 std::uint64_t seed, const DecomposeTolerances& tol) {
  TrialResult t;
  t.seed = seed;
  t.chars = {a, b};
  const auto table = a1_table(ell);
  const Expected e{static_cast<int>(ell), static_cast<int>(pred(table, "tensor_mult")),
                   static_cast<int>(pred(table, "degree_U"))};
  try {
    const auto product = sl2::z0_product(a, b);
    if (!product.generic()) return inconclusive(std::move(t), "product character has x = y = 0");
    const auto ra = sl2::build_cyclic_rep(ell, a, branch_a);
    const auto rb = sl2::build_cyclic_rep(ell, b, branch_b);
    if (!semisimplicity_check(ra.action(), tol.gram) || !semisimplicity_check(rb.action(), tol.gram))
      return inconclusive(std::move(t), "a factor has a degenerate trace form");
    const auto act = sl2::tensor_action(ra, rb);
    t.report = isotypic_decompose(act, sl2::casimir_matrix(act), tol, seed);
    if (!t.report.semisimple) return inconclusive(std::move(t), "tensor image algebra is not semisimple");
    for (const auto& s : t.report.summands)
      t.z0_residual = std::max(t.z0_residual, sl2::distance(s.z0, product) / char_scale(product));
    finish(t, e, 1e-6);
    if (t.verdict == Verdict::Pass && static_cast<int>(t.report.summands.size()) * e.mult != ell) {
      t.verdict = Verdict::Fail;
      t.reason = "summand count times multiplicity differs from ell";
    }
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::UnsupportedCharacter) return inconclusive(std::move(t), err.what());
    t.verdict = Verdict::Fail;
    t.reason = std::string(to_string(err.kind())) + ": " + err.what();
  }
  return t;
}

VerificationReport verify_clebsch_gordan(int ell, std::uint64_t seed, int trials, int jobs,
                                         const DecomposeTolerances& tol) {
  const auto table = a1_table(ell);
  VerificationReport rep;
  rep.experiment = "cg";
  rep.ell = ell;
  rep.seed = seed;
  rep.expected_count = ell;
  rep.expected_mult = static_cast<int>(pred(table, "tensor_mult"));
  rep.expected_irrep_dim = static_cast<int>(pred(table, "degree_U"));
  rep.trials = run_trials(trials, jobs, [&](int t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    std::mt19937_64 rng(s);
    const auto a = sl2::random_generic_char(ell, rng);
    const auto b = sl2::random_generic_char(ell, rng);
    std::uniform_int_distribution<int> br(0, ell - 1);
    const int ba = br(rng), bb = br(rng);
    return clebsch_gordan_trial(ell, a, ba, b, bb, s, tol);
  });
  return rep;
}

// ------------------------------------------------------------ branching

TrialResult branching_trial(int ell, const CentralCharZ0& chi, int branch, std::uint64_t seed,
                            const DecomposeTolerances& tol) {
  TrialResult t;
  t.seed = seed;
  t.chars = {chi};
  const auto table = a1_table(ell);
  const Expected e{static_cast<int>(pred(table, "branch_count")), static_cast<int>(pred(table, "branch_mult")),
                   static_cast<int>(pred(table, "degree_Borel"))};
  try {
    if (chi.x == Complex(0)) return inconclusive(std::move(t), "x = 0 makes E nilpotent");
    const auto rep = sl2::build_cyclic_rep(ell, chi, branch);
    const auto act = sl2::borel_restriction(rep);
    const auto img = image_algebra(act, tol.rank);
    if (!semisimplicity_check(img, tol.gram)) return inconclusive(std::move(t), "Borel image algebra is not semisimple");
    std::mt19937_64 rng(seed);
    const MatrixXcd central = img.random_central_element(rng, tol.rank);
    t.report = isotypic_decompose(act, central, tol, seed);
    for (const auto& s : t.report.summands)
      t.z0_residual = std::max(t.z0_residual, std::max(std::abs(s.z0.x - chi.x), std::abs(s.z0.z - chi.z)) /
                                                  char_scale(chi));
    finish(t, e, 1e-6);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::UnsupportedCharacter) return inconclusive(std::move(t), err.what());
    t.verdict = Verdict::Fail;
    t.reason = std::string(to_string(err.kind())) + ": " + err.what();
  }
  return t;
}

VerificationReport verify_branching(int ell, std::uint64_t seed, int trials, int jobs, const DecomposeTolerances& tol) {
  const auto table = a1_table(ell);
  VerificationReport rep;
  rep.experiment = "branch";
  rep.ell = ell;
  rep.seed = seed;
  rep.expected_count = static_cast<int>(pred(table, "branch_count"));
  rep.expected_mult = static_cast<int>(pred(table, "branch_mult"));
  rep.expected_irrep_dim = static_cast<int>(pred(table, "degree_Borel"));
  rep.trials = run_trials(trials, jobs, [&](int t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    std::mt19937_64 rng(s);
    const auto chi = sl2::random_generic_char(ell, rng);
    std::uniform_int_distribution<int> br(0, ell - 1);
    const int b = br(rng);
    return branching_trial(ell, chi, b, s, tol);
  });
  return rep;
}

// ------------------------------------------------------------ rescaled restriction

VerificationReport verify_rescaled_restriction(int ell, int r, std::uint64_t seed, int trials,
                                               const DecomposeTolerances& tol) {
  require(r >= 1 && r <= 3, ErrorKind::InvalidParameter, "r must lie in 1..3");
  const auto table = a1_table(ell);
  VerificationReport rep;
  rep.experiment = "rescale";
  rep.ell = ell;
  rep.r = r;
  rep.seed = seed;
  rep.expected_count = 1;
  rep.expected_mult = r;
  rep.expected_irrep_dim = static_cast<int>(pred(table, "degree_U"));
  const Expected e{1, r, rep.expected_irrep_dim};
  rep.trials = run_trials(trials, 1, [&](int t) {
    TrialResult tr;
    tr.seed = seed + static_cast<std::uint64_t>(t);
    std::mt19937_64 rng(tr.seed);
    const auto chi = sl2::random_generic_char(ell, rng);
    std::uniform_int_distribution<int> br(0, ell - 1);
    const int b = br(rng);
    tr.chars = {chi};
    try {
      const auto cyc = sl2::build_cyclic_rep(ell, chi, b);
      const auto act = cyc.action().direct_power(r);
      tr.report = isotypic_decompose(act, sl2::casimir_matrix(act), tol, tr.seed);
      for (const auto& s : tr.report.summands)
        tr.z0_residual = std::max(tr.z0_residual, sl2::distance(s.z0, chi) / char_scale(chi));
      finish(tr, e, 1e-6);
      if (tr.verdict == Verdict::Pass) {
        const auto alg = image_algebra(act, tol.rank).to_trace_algebra();
        BlockOptions opts;
        opts.seed = tr.seed;
        const auto spectrum = block_decompose(alg, opts);
        const BlockSpectrum expect{{Block{ell, r}}};
        if (alg.ch_degree() != r * ell || !(spectrum == expect)) {
          tr.verdict = Verdict::Fail;
          tr.reason = "block spectrum " + spectrum.to_string() + " with ch degree " + std::to_string(alg.ch_degree());
        }
      }
    } catch (const Error& err) {
      tr.verdict = Verdict::Fail;
      tr.reason = std::string(to_string(err.kind())) + ": " + err.what();
    }
    return tr;
  });
  return rep;
}

}  // namespace chtrace
