#include <algorithm>
#include <cmath>

#include "chtrace/decompose.hpp"
#include "chtrace/errors.hpp"
#include "chtrace/numeric.hpp"

namespace chtrace {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "fail";
}

std::size_t DecompositionReport::total_dim() const {
  std::size_t t = 0;
  for (const auto& s : summands) t += static_cast<std::size_t>(s.irrep_dim * s.multiplicity);
  return t;
}

json DecompositionReport::to_json() const {
  json sm = json::array();
  for (const auto& s : summands) {
    json j{{"irrep_dim", s.irrep_dim},
           {"multiplicity", s.multiplicity},
           {"central_value", complex_to_json(s.central_value)}};
    if (s.z0_complete) j["z0_char"] = sl2::char_to_json(s.z0);
    else j["z0_partial"] = json{{"x", complex_to_json(s.z0.x)}, {"z", complex_to_json(s.z0.z)}};
    sm.push_back(std::move(j));
  }
  return json{{"dim", dim},
              {"semisimple", semisimple},
              {"conclusive", conclusive},
              {"note", note},
              {"attempts", attempts},
              {"summands", sm},
              {"residuals",
               {{"invariance", invariance_residual}, {"eigen_gap", eigen_gap}, {"commutator", commutator_residual}}}};
}

namespace {

enum class SplitFailure { None, Ambiguous, NonSquare };

struct SplitOutcome {
  SplitFailure failure = SplitFailure::None;
  std::string reason;
  std::vector<Summand> summands;
  double invariance = 0;
  double gap = 0;
};

bool read_scalar(const MatrixXcd& m, double tol, Complex& out) { return numeric::scalar_value(m, tol, out); }

SplitOutcome try_split(const ModuleAction& act, const MatrixXcd& C, const DecomposeTolerances& tol) {
  SplitOutcome out;
  const auto n = static_cast<Eigen::Index>(act.dim);
  Eigen::ComplexEigenSolver<MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) {
    out.failure = SplitFailure::Ambiguous;
    out.reason = "eigenvalue computation failed";
    return out;
  }
  const Eigen::VectorXcd vals = es.eigenvalues();
  const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
  const auto clusters = numeric::cluster_values(vals, tol.cluster * scale);
  out.gap = numeric::min_intercluster_gap(vals, clusters);

  std::vector<MatrixXcd> spaces;
  std::vector<Complex> centers;
  Eigen::Index total = 0;
  for (const auto& cl : clusters) {
    Complex c = 0;
    for (auto i : cl) c += vals(i);
    c /= static_cast<double>(cl.size());
    MatrixXcd sp = numeric::kernel(C - c * MatrixXcd::Identity(n, n), 1e-7);
    if (sp.cols() != static_cast<Eigen::Index>(cl.size())) {
      out.failure = SplitFailure::Ambiguous;
      out.reason = "separating element is not diagonalizable";
      return out;
    }
    total += sp.cols();
    spaces.push_back(std::move(sp));
    centers.push_back(c);
  }
  if (total != n) {
    out.failure = SplitFailure::Ambiguous;
    out.reason = "eigenspaces do not span the module";
    return out;
  }
  MatrixXcd V(n, n);
  for (Eigen::Index col = 0; const auto& sp : spaces) {
    V.middleCols(col, sp.cols()) = sp;
    col += sp.cols();
  }
  Eigen::FullPivLU<MatrixXcd> lu(V);
  if (!lu.isInvertible()) {
    out.failure = SplitFailure::Ambiguous;
    out.reason = "eigenspaces are not independent";
    return out;
  }
  const MatrixXcd W = lu.inverse();

  Eigen::Index col = 0;
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    const MatrixXcd& Vs = spaces[s];
    const Eigen::Index d = Vs.cols();
    const MatrixXcd Ws = W.middleRows(col, d);
    col += d;
    std::vector<std::pair<std::string, MatrixXcd>> gens;
    for (const auto& [name, g] : act.generators) {
      MatrixXcd gs = Ws * g * Vs;
      out.invariance = std::max(out.invariance, (g * Vs - Vs * gs).norm() / std::max(1.0, g.norm() * Vs.norm()));
      gens.emplace_back(name, std::move(gs));
    }
    std::vector<MatrixXcd> mats;
    for (const auto& g : gens) mats.push_back(g.second);
    const int comm = numeric::commutant_dimension(mats, tol.rank);
    const long m = numeric::exact_sqrt(comm);
    if (m <= 0 || d % m != 0) {
      out.failure = SplitFailure::NonSquare;
      out.reason = "commutant dimension " + std::to_string(comm) + " of a " + std::to_string(d) +
                   "-dimensional block gives no integral multiplicity";
      return out;
    }
    const long irrep = d / m;
    const ModuleAction block(act.algebra, act.ell, std::move(gens));
    const std::size_t img_dim = image_algebra(block, tol.rank).dim();
    if (img_dim != static_cast<std::size_t>(irrep * irrep)) {
      out.failure = SplitFailure::Ambiguous;
      out.reason = "block image has dimension " + std::to_string(img_dim) + ", expected " +
                   std::to_string(irrep * irrep);
      return out;
    }
    Summand sm;
    sm.irrep_dim = static_cast<int>(irrep);
    sm.multiplicity = static_cast<int>(m);
    sm.central_value = centers[s];
    if (act.ell >= 3 && block.has("E") && block.has("K")) {
      bool ok = read_scalar(numeric::matrix_power(block.get("E"), act.ell), tol.scalar, sm.z0.x) &&
                read_scalar(numeric::matrix_power(block.get("K"), act.ell), tol.scalar, sm.z0.z);
      if (ok && block.has("F")) {
        ok = read_scalar(numeric::matrix_power(block.get("F"), act.ell), tol.scalar, sm.z0.y);
        sm.z0_complete = ok;
      }
      if (!ok) {
        out.failure = SplitFailure::Ambiguous;
        out.reason = "central character is not scalar on a block";
        return out;
      }
    }
    out.summands.push_back(sm);
  }
  std::sort(out.summands.begin(), out.summands.end(), [](const Summand& a, const Summand& b) {
    if (a.irrep_dim != b.irrep_dim) return a.irrep_dim < b.irrep_dim;
    if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
    if (a.central_value.real() != b.central_value.real()) return a.central_value.real() < b.central_value.real();
    return a.central_value.imag() < b.central_value.imag();
  });
  return out;
}

}  // namespace

DecompositionReport isotypic_decompose(const ModuleAction& act, const MatrixXcd& central,
                                       const DecomposeTolerances& tol, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(act.dim);
  require(central.rows() == n && central.cols() == n, ErrorKind::InvalidParameter,
          "central element has the wrong shape");
  DecompositionReport report;
  report.dim = act.dim;
  for (const auto& [name, g] : act.generators) {
    const double res = (central * g - g * central).norm() / std::max(1.0, central.norm() * g.norm());
    report.commutator_residual = std::max(report.commutator_residual, res);
  }
  require(report.commutator_residual <= tol.commute, ErrorKind::InvalidParameter,
          "element does not commute with the action (residual " + std::to_string(report.commutator_residual) + ")");

  const ImageAlgebra img = image_algebra(act, tol.rank);
  report.semisimple = semisimplicity_check(img, tol.gram);
  if (!report.semisimple) {
    report.note = "image algebra is not semisimple";
    return report;
  }

  std::mt19937_64 rng(seed);
  MatrixXcd C = central;
  SplitOutcome last;
  for (int attempt = 0; attempt <= tol.reseeds; ++attempt) {
    report.attempts = attempt + 1;
    last = try_split(act, C, tol);
    report.eigen_gap = last.gap;
    report.invariance_residual = last.invariance;
    if (last.failure == SplitFailure::None) {
      report.summands = std::move(last.summands);
      report.conclusive = true;
      return report;
    }
    C = central + img.random_central_element(rng);
  }
  if (last.failure == SplitFailure::NonSquare) fail(ErrorKind::DecompositionFailed, last.reason);
  report.note = "ambiguous after " + std::to_string(report.attempts) + " attempts: " + last.reason;
  return report;
}

}  // namespace chtrace
