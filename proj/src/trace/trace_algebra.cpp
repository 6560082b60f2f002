#include "chtrace/trace_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "chtrace/errors.hpp"
#include "chtrace/numeric.hpp"

namespace chtrace {

FiniteTraceAlgebra::FiniteTraceAlgebra(Field field, std::vector<std::string> labels,
                                       std::vector<std::vector<StructureTerm>> structure, Vec unit,
                                       Vec trace, int ch_degree)
    : field_(field),
      labels_(std::move(labels)),
      structure_(std::move(structure)),
      unit_(std::move(unit)),
      trace_(std::move(trace)),
      ch_degree_(ch_degree) {
  const std::size_t d = labels_.size();
  require(d > 0, ErrorKind::InvalidInput, "algebra dimension must be positive");
  require(ch_degree_ > 0, ErrorKind::InvalidInput, "ch_degree must be positive");
  require(structure_.size() == d * d, ErrorKind::InvalidInput, "structure table must have dim^2 entries");
  require(unit_.size() == d && trace_.size() == d, ErrorKind::InvalidInput,
          "unit and trace vectors must have length dim");
  for (auto& s : unit_) s = s.promote(field_);
  for (auto& s : trace_) s = s.promote(field_);
  for (auto& terms : structure_) {
    for (auto& t : terms) {
      require(t.k < d, ErrorKind::InvalidInput, "structure constant index out of range");
      t.coeff = t.coeff.promote(field_);
    }
    std::erase_if(terms, [](const StructureTerm& t) { return t.coeff.is_zero(); });
  }
}

Vec FiniteTraceAlgebra::multiply(const Vec& a, const Vec& b) const {
  const std::size_t d = dim();
  require(a.size() == d && b.size() == d, ErrorKind::InvalidParameter, "element length mismatch");
  Vec r = zero();
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b[j].is_zero()) continue;
      const auto& terms = structure_[i * d + j];
      if (terms.empty()) continue;
      const Scalar ab = a[i] * b[j];
      for (const auto& t : terms) r[t.k] += ab * t.coeff;
    }
  }
  return r;
}

Vec FiniteTraceAlgebra::power(const Vec& a, int e) const {
  require(e >= 0, ErrorKind::InvalidParameter, "negative power in an algebra");
  Vec r = unit_;
  for (int i = 0; i < e; ++i) r = multiply(r, a);
  return r;
}

Scalar FiniteTraceAlgebra::trace(const Vec& a) const {
  require(a.size() == dim(), ErrorKind::InvalidParameter, "element length mismatch");
  Scalar t = Scalar::zero(field_);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !trace_[i].is_zero()) t += a[i] * trace_[i];
  return t;
}

Mat FiniteTraceAlgebra::left_multiplication(const Vec& a) const {
  const std::size_t d = dim();
  Mat m(field_, d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const Vec col = multiply(a, basis_vector(j));
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

Mat FiniteTraceAlgebra::trace_form() const {
  const std::size_t d = dim();
  Mat g(field_, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Scalar t = Scalar::zero(field_);
      for (const auto& term : product(i, j)) t += term.coeff * trace_[term.k];
      g(i, j) = t;
    }
  return g;
}

FiniteTraceAlgebra FiniteTraceAlgebra::with_trace(Vec trace, int ch_degree) const {
  return FiniteTraceAlgebra(field_, labels_, structure_, unit_, std::move(trace), ch_degree);
}

FiniteTraceAlgebra FiniteTraceAlgebra::promote(const Field& f) const {
  auto structure = structure_;
  for (auto& terms : structure)
    for (auto& t : terms) t.coeff = t.coeff.promote(f);
  return FiniteTraceAlgebra(f, labels_, std::move(structure), chtrace::promote(unit_, f),
                            chtrace::promote(trace_, f), ch_degree_);
}

// ------------------------------------------------------------ axioms

bool AxiomReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* AxiomReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

double tol_for(const Field& f) { return f.exact() ? 0.0 : kCheckTol; }

bool same(const Scalar& a, const Scalar& b, double tol) { return (a - b).is_zero(tol); }

bool same(const Vec& a, const Vec& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i], tol)) return false;
  return true;
}

}  // namespace

AxiomReport check_axioms(const FiniteTraceAlgebra& a) {
  const std::size_t d = a.dim();
  const double tol = tol_for(a.field());
  const auto& lab = a.labels();
  AxiomReport report;

  AxiomCheck assoc{kAxAssociativity, true, {}};
  std::vector<Vec> pair_products(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      pair_products[i * d + j] = a.multiply(a.basis_vector(i), a.basis_vector(j));
  for (std::size_t i = 0; i < d && assoc.passed; ++i)
    for (std::size_t j = 0; j < d && assoc.passed; ++j)
      for (std::size_t k = 0; k < d && assoc.passed; ++k) {
        const Vec lhs = a.multiply(pair_products[i * d + j], a.basis_vector(k));
        const Vec rhs = a.multiply(a.basis_vector(i), pair_products[j * d + k]);
        if (!same(lhs, rhs, tol)) {
          assoc.passed = false;
          assoc.witness = "(" + lab[i] + ", " + lab[j] + ", " + lab[k] + ")";
        }
      }
  report.checks.push_back(assoc);

  AxiomCheck unit{kAxUnit, true, {}};
  for (std::size_t i = 0; i < d && unit.passed; ++i) {
    const Vec e = a.basis_vector(i);
    if (!same(a.multiply(a.unit(), e), e, tol) || !same(a.multiply(e, a.unit()), e, tol)) {
      unit.passed = false;
      unit.witness = lab[i];
    }
  }
  report.checks.push_back(unit);

  AxiomCheck sym{kAxTraceSymmetry, true, {}};
  for (std::size_t i = 0; i < d && sym.passed; ++i)
    for (std::size_t j = i + 1; j < d && sym.passed; ++j)
      if (!same(a.trace(pair_products[i * d + j]), a.trace(pair_products[j * d + i]), tol)) {
        sym.passed = false;
        sym.witness = "(" + lab[i] + ", " + lab[j] + ")";
      }
  report.checks.push_back(sym);

  AxiomCheck t1{kAxTraceOfUnit, true, {}};
  const Scalar n = Scalar::from_rational(a.field(), Rational(a.ch_degree()));
  const Scalar t_unit = a.trace(a.unit());
  if (!same(t_unit, n, tol)) {
    t1.passed = false;
    t1.witness = "t(1) = " + t_unit.to_string() + " but n = " + std::to_string(a.ch_degree());
  }
  report.checks.push_back(t1);
  return report;
}

// ------------------------------------------------------------ Cayley-Hamilton

std::vector<Scalar> char_poly_coeffs(const std::vector<Scalar>& power_traces, int n) {
  require(n > 0, ErrorKind::InvalidParameter, "characteristic polynomial degree must be positive");
  require(power_traces.size() >= static_cast<std::size_t>(n), ErrorKind::InvalidParameter,
          "need n power traces");
  const Field f = power_traces.front().field();
  // e_k from k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i, then P_k = (-1)^k e_k
  std::vector<Scalar> e(static_cast<std::size_t>(n) + 1, Scalar::zero(f));
  e[0] = Scalar::one(f);
  for (int k = 1; k <= n; ++k) {
    Scalar acc = Scalar::zero(f);
    for (int i = 1; i <= k; ++i) {
      Scalar term = e[static_cast<std::size_t>(k - i)] * power_traces[static_cast<std::size_t>(i - 1)];
      if (i % 2 == 0) term = -term;
      acc += term;
    }
    e[static_cast<std::size_t>(k)] = acc / Scalar::from_rational(f, Rational(k));
  }
  std::vector<Scalar> p;
  for (int k = 1; k <= n; ++k)
    p.push_back(k % 2 == 0 ? e[static_cast<std::size_t>(k)] : -e[static_cast<std::size_t>(k)]);
  return p;
}

Vec ch_defect(const FiniteTraceAlgebra& a, const Vec& x) {
  const int n = a.ch_degree();
  std::vector<Vec> powers{a.unit()};
  for (int i = 1; i <= n; ++i) powers.push_back(a.multiply(powers.back(), x));
  std::vector<Scalar> traces;
  for (int i = 1; i <= n; ++i) traces.push_back(a.trace(powers[static_cast<std::size_t>(i)]));
  const auto coeffs = char_poly_coeffs(traces, n);
  Vec r = powers[static_cast<std::size_t>(n)];
  for (int i = 1; i <= n; ++i)
    axpy(coeffs[static_cast<std::size_t>(i - 1)], powers[static_cast<std::size_t>(n - i)], r);
  return r;
}

bool ch_check(const FiniteTraceAlgebra& a, int sample_count, std::uint64_t seed, double tol) {
  require(sample_count >= 1, ErrorKind::InvalidParameter, "sample_count must be >= 1");
  if (!check_axioms(a).ok()) return false;
  const std::size_t d = a.dim();
  const double ztol = a.field().exact() ? 0.0 : tol * static_cast<double>(d);
  auto vanishes = [&](const Vec& x) { return is_zero(ch_defect(a, x), ztol); };

  for (std::size_t i = 0; i < d; ++i)
    if (!vanishes(a.basis_vector(i))) return false;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (!vanishes(add(a.basis_vector(i), a.basis_vector(j)))) return false;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> small(-3, 3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < sample_count; ++s) {
    Vec x = a.zero();
    for (auto& c : x) {
      if (a.field().exact()) {
        c = Scalar::from_rational(a.field(), Rational(small(rng)));
      } else {
        const double re = u(rng);
        c = Scalar(Complex(re, u(rng)));
      }
    }
    if (!vanishes(x)) return false;
  }
  return true;
}

// ------------------------------------------------------------ radical

std::vector<Vec> radical(const FiniteTraceAlgebra& a) {
  const AxiomReport rep = check_axioms(a);
  if (!rep.ok()) {
    for (const auto& c : rep.checks)
      if (!c.passed) fail(ErrorKind::InvalidInput, "axiom " + c.name + " fails at " + c.witness);
  }
  return nullspace(a.trace_form());
}

std::string BlockSpectrum::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) os << ",";
    os << "(" << blocks[i].k << "," << blocks[i].h << ")";
  }
  os << "}";
  return os.str();
}

namespace {

using numeric::MatrixXcd;
using numeric::VectorXcd;
using numeric::cplx;

VectorXcd to_eigen(const Vec& v) {
  VectorXcd r(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v[i].embed();
  return r;
}

// Complex structure constants of A, kept sparse.
struct ComplexAlgebra {
  std::size_t d;
  std::vector<std::vector<std::pair<Eigen::Index, cplx>>> terms;

  explicit ComplexAlgebra(const FiniteTraceAlgebra& a) : d(a.dim()), terms(d * d) {
    for (std::size_t i = 0; i < d * d; ++i)
      for (const auto& t : a.structure()[i]) terms[i].emplace_back(static_cast<Eigen::Index>(t.k), t.coeff.embed());
  }

  VectorXcd multiply(const VectorXcd& x, const VectorXcd& y) const {
    VectorXcd r = VectorXcd::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
      const cplx xi = x(static_cast<Eigen::Index>(i));
      if (xi == cplx(0)) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const cplx xy = xi * y(static_cast<Eigen::Index>(j));
        if (xy == cplx(0)) continue;
        for (const auto& [k, c] : terms[i * d + j]) r(k) += xy * c;
      }
    }
    return r;
  }
};

struct Splitting {
  BlockSpectrum spectrum;
  std::vector<VectorXcd> idempotents;  // central idempotents lifted to A, aligned with spectrum
};

// One attempt at splitting A / rad(A) with a central element drawn from rng.
std::optional<Splitting> try_split(const FiniteTraceAlgebra& a, const ComplexAlgebra& ca, const MatrixXcd& q,
                                   const std::vector<MatrixXcd>& left, const MatrixXcd& center,
                                   std::mt19937_64& rng, const BlockOptions& opts, std::string& why) {
  const Eigen::Index m = q.cols();
  VectorXcd coeffs(center.cols());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = numeric::uniform_square(rng);
  const VectorXcd z = center * coeffs;
  MatrixXcd lz = MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) lz += z(i) * left[static_cast<std::size_t>(i)];

  Eigen::ComplexEigenSolver<MatrixXcd> es(lz);
  if (es.info() != Eigen::Success) {
    why = "eigen solver did not converge";
    return std::nullopt;
  }
  const VectorXcd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const auto clusters = numeric::cluster_values(ev, opts.cluster_gap * scale);
  if (static_cast<Eigen::Index>(clusters.size()) != center.cols()) {
    why = "central element is not generic (" + std::to_string(clusters.size()) + " clusters for a center of dimension " +
          std::to_string(center.cols()) + ")";
    return std::nullopt;
  }

  const MatrixXcd v = es.eigenvectors();
  Eigen::FullPivLU<MatrixXcd> lu(v);
  if (!lu.isInvertible()) {
    why = "central element is not diagonalizable";
    return std::nullopt;
  }
  const MatrixXcd vinv = lu.inverse();
  const VectorXcd unit_q = q.adjoint() * to_eigen(a.unit());
  const VectorXcd tr = to_eigen(a.trace_vec());

  Splitting out;
  std::vector<std::pair<Block, VectorXcd>> found;
  long total = 0;
  for (const auto& cl : clusters) {
    const long k = numeric::exact_sqrt(static_cast<long>(cl.size()));
    if (k < 1) {
      why = "block of dimension " + std::to_string(cl.size()) + " is not a square";
      return std::nullopt;
    }
    VectorXcd e = VectorXcd::Zero(m);
    for (auto i : cl) e += v.col(i) * (vinv.row(i) * unit_q)(0);
    const VectorXcd lifted = q * e;
    const VectorXcd sq = q.adjoint() * ca.multiply(lifted, lifted);
    if ((sq - e).norm() > opts.integrality_tol * std::max(1.0, e.norm())) {
      why = "idempotent residual too large";
      return std::nullopt;
    }
    const cplx h = tr.dot(lifted.conjugate()) / static_cast<double>(k);
    const double hr = std::round(h.real());
    if (std::abs(h - cplx(hr)) > opts.integrality_tol || hr < 1) {
      fail(ErrorKind::DecompositionFailed, "block of size " + std::to_string(k) + " has non-integral multiplicity " +
                                               std::to_string(h.real()) + (h.imag() != 0.0 ? "+" + std::to_string(h.imag()) + "i" : ""));
    }
    total += k * static_cast<long>(hr);
    found.push_back({Block{static_cast<int>(k), static_cast<int>(hr)}, lifted});
  }
  if (total != a.ch_degree())
    fail(ErrorKind::DecompositionFailed, "sum of h_i k_i is " + std::to_string(total) + " but n = " +
                                             std::to_string(a.ch_degree()));
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [b, e] : found) {
    out.spectrum.blocks.push_back(b);
    out.idempotents.push_back(std::move(e));
  }
  return out;
}

Splitting split(const FiniteTraceAlgebra& a, const BlockOptions& opts) {
  require(opts.max_attempts >= 1, ErrorKind::InvalidParameter, "max_attempts must be >= 1");
  const auto rad = radical(a);
  const Eigen::Index d = static_cast<Eigen::Index>(a.dim());
  MatrixXcd rcols(d, static_cast<Eigen::Index>(rad.size()));
  for (std::size_t i = 0; i < rad.size(); ++i) rcols.col(static_cast<Eigen::Index>(i)) = to_eigen(rad[i]);
  const MatrixXcd q = numeric::orthogonal_complement(rcols, d);
  const Eigen::Index m = q.cols();
  require(m > 0, ErrorKind::DecompositionFailed, "algebra equals its radical");

  const ComplexAlgebra ca(a);
  std::vector<MatrixXcd> left(static_cast<std::size_t>(m), MatrixXcd(m, m));
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      left[static_cast<std::size_t>(i)].col(j) = q.adjoint() * ca.multiply(q.col(i), q.col(j));

  // z is central iff L_z e_j = L_j z for every basis element e_j.
  MatrixXcd sys(m * m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i)
      sys.block(j * m, i, m, 1) = left[static_cast<std::size_t>(i)].col(j) - left[static_cast<std::size_t>(j)].col(i);
  const MatrixXcd center = numeric::kernel(sys, kDefaultRankTol);

  std::string why;
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(attempt));
    if (auto s = try_split(a, ca, q, left, center, rng, opts, why)) return std::move(*s);
  }
  fail(ErrorKind::DecompositionFailed, "splitting failed after " + std::to_string(opts.max_attempts) +
                                           " attempts: " + why);
}

}  // namespace

BlockSpectrum block_decompose(const FiniteTraceAlgebra& a, const BlockOptions& opts) {
  return split(a, opts).spectrum;
}

ReducedTrace reduced_trace(const FiniteTraceAlgebra& a, const BlockOptions& opts) {
  if (!radical(a).empty()) fail(ErrorKind::NotSemisimple, "trace form is degenerate");
  const Splitting s = split(a, opts);
  ReducedTrace out;
  out.spectrum = s.spectrum;
  const int r = s.spectrum.blocks.front().h;
  const bool uniform = std::all_of(s.spectrum.blocks.begin(), s.spectrum.blocks.end(),
                                   [r](const Block& b) { return b.h == r; });
  if (uniform) {
    out.multiple = r;
    out.trace = scaled(Scalar::from_rational(a.field(), Rational(1, r)), a.trace_vec());
    return out;
  }
  // t_red(x) = sum_i t(c_i x) / h_i over the central idempotents c_i.
  const ComplexAlgebra ca(a);
  const VectorXcd tr = to_eigen(a.trace_vec());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const VectorXcd ej = to_eigen(a.basis_vector(j));
    cplx acc = 0;
    for (std::size_t i = 0; i < s.idempotents.size(); ++i)
      acc += tr.dot(ca.multiply(s.idempotents[i], ej).conjugate()) / static_cast<double>(s.spectrum.blocks[i].h);
    out.trace.push_back(Scalar(acc));
  }
  return out;
}

// ------------------------------------------------------------ constructions

FiniteTraceAlgebra rescale_trace(const FiniteTraceAlgebra& a, int r) {
  require(r >= 1, ErrorKind::InvalidParameter, "rescale factor must be positive");
  const Scalar rs = Scalar::from_rational(a.field(), Rational(r));
  return a.with_trace(scaled(rs, a.trace_vec()), a.ch_degree() * r);
}

FiniteTraceAlgebra direct_sum(const FiniteTraceAlgebra& a, const FiniteTraceAlgebra& b) {
  require(a.field() == b.field(), ErrorKind::InvalidParameter, "direct sum of algebras over different fields");
  const std::size_t da = a.dim(), db = b.dim(), d = da + db;
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back(l + "|1");
  for (const auto& l : b.labels()) labels.push_back(l + "|2");
  std::vector<std::vector<StructureTerm>> st(d * d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) st[i * d + j] = a.product(i, j);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      auto terms = b.product(i, j);
      for (auto& t : terms) t.k += da;
      st[(da + i) * d + (da + j)] = std::move(terms);
    }
  Vec unit = a.unit(), trace = a.trace_vec();
  unit.insert(unit.end(), b.unit().begin(), b.unit().end());
  trace.insert(trace.end(), b.trace_vec().begin(), b.trace_vec().end());
  return FiniteTraceAlgebra(a.field(), std::move(labels), std::move(st), std::move(unit), std::move(trace),
                            a.ch_degree() + b.ch_degree());
}

FiniteTraceAlgebra tensor_product(const FiniteTraceAlgebra& a, const FiniteTraceAlgebra& b) {
  require(a.field() == b.field(), ErrorKind::InvalidParameter, "tensor product of algebras over different fields");
  const std::size_t da = a.dim(), db = b.dim(), d = da * db;
  auto idx = [db](std::size_t i, std::size_t j) { return i * db + j; };
  std::vector<std::string> labels;
  for (const auto& la : a.labels())
    for (const auto& lb : b.labels()) labels.push_back(la + "*" + lb);
  std::vector<std::vector<StructureTerm>> st(d * d);
  for (std::size_t i1 = 0; i1 < da; ++i1)
    for (std::size_t j1 = 0; j1 < db; ++j1)
      for (std::size_t i2 = 0; i2 < da; ++i2)
        for (std::size_t j2 = 0; j2 < db; ++j2) {
          auto& out = st[idx(i1, j1) * d + idx(i2, j2)];
          for (const auto& ta : a.product(i1, i2))
            for (const auto& tb : b.product(j1, j2)) out.push_back({idx(ta.k, tb.k), ta.coeff * tb.coeff});
        }
  Vec unit, trace;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      unit.push_back(a.unit()[i] * b.unit()[j]);
      trace.push_back(a.trace_vec()[i] * b.trace_vec()[j]);
    }
  return FiniteTraceAlgebra(a.field(), std::move(labels), std::move(st), std::move(unit), std::move(trace),
                            a.ch_degree() * b.ch_degree());
}

// ------------------------------------------------------------ standard algebras

FiniteTraceAlgebra matrix_algebra(int k, const Field& f) {
  require(k >= 1, ErrorKind::InvalidParameter, "matrix size must be positive");
  const std::size_t n = static_cast<std::size_t>(k), d = n * n;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
  std::vector<std::vector<StructureTerm>> st(d * d);
  // e_ij e_jl = e_il
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        st[(i * n + j) * d + (j * n + l)].push_back({i * n + l, Scalar::one(f)});
  Vec unit = zero_vec(f, d), trace = zero_vec(f, d);
  for (std::size_t i = 0; i < n; ++i) {
    unit[i * n + i] = Scalar::one(f);
    trace[i * n + i] = Scalar::one(f);
  }
  return FiniteTraceAlgebra(f, std::move(labels), std::move(st), std::move(unit), std::move(trace), k);
}

FiniteTraceAlgebra cyclic_group_algebra(int n, const Field& f) {
  require(n >= 1, ErrorKind::InvalidParameter, "group order must be positive");
  const std::size_t d = static_cast<std::size_t>(n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("g^" + std::to_string(i));
  std::vector<std::vector<StructureTerm>> st(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) st[i * d + j].push_back({(i + j) % d, Scalar::one(f)});
  Vec unit = unit_vec(f, d, 0);
  Vec trace = zero_vec(f, d);
  trace[0] = Scalar::from_rational(f, Rational(n));
  return FiniteTraceAlgebra(f, std::move(labels), std::move(st), std::move(unit), std::move(trace), n);
}

FiniteTraceAlgebra truncated_polynomial(int m, const Field& f) {
  require(m >= 1, ErrorKind::InvalidParameter, "truncation degree must be positive");
  const std::size_t d = static_cast<std::size_t>(m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back(i == 0 ? "1" : "x^" + std::to_string(i));
  std::vector<std::vector<StructureTerm>> st(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; i + j < d; ++j) st[i * d + j].push_back({i + j, Scalar::one(f)});
  Vec unit = unit_vec(f, d, 0);
  Vec trace = zero_vec(f, d);
  trace[0] = Scalar::from_rational(f, Rational(m));
  return FiniteTraceAlgebra(f, std::move(labels), std::move(st), std::move(unit), std::move(trace), m);
}

FiniteTraceAlgebra upper_triangular(int k, const Field& f) {
  require(k >= 1, ErrorKind::InvalidParameter, "matrix size must be positive");
  const std::size_t n = static_cast<std::size_t>(k);
  std::vector<std::pair<std::size_t, std::size_t>> units;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) units.emplace_back(i, j);
  const std::size_t d = units.size();
  auto index_of = [&](std::size_t i, std::size_t j) {
    return static_cast<std::size_t>(std::find(units.begin(), units.end(), std::pair{i, j}) - units.begin());
  };
  std::vector<std::string> labels;
  for (auto [i, j] : units) labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
  std::vector<std::vector<StructureTerm>> st(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (units[a].second == units[b].first)
        st[a * d + b].push_back({index_of(units[a].first, units[b].second), Scalar::one(f)});
  Vec unit = zero_vec(f, d), trace = zero_vec(f, d);
  for (std::size_t i = 0; i < n; ++i) {
    unit[index_of(i, i)] = Scalar::one(f);
    trace[index_of(i, i)] = Scalar::one(f);
  }
  return FiniteTraceAlgebra(f, std::move(labels), std::move(st), std::move(unit), std::move(trace), k);
}

FiniteTraceAlgebra matrix_subalgebra(const std::vector<Mat>& basis, std::vector<std::string> labels) {
  require(!basis.empty(), ErrorKind::InvalidParameter, "empty basis");
  const Field f = basis.front().field();
  const std::size_t n = basis.front().rows();
  const std::size_t d = basis.size();
  if (labels.empty())
    for (std::size_t i = 0; i < d; ++i) labels.push_back("b" + std::to_string(i));
  SpanBuilder span(f, n * n);
  for (const auto& b : basis)
    require(span.add(b.data()), ErrorKind::InvalidParameter, "basis matrices are linearly dependent");
  auto coords = [&](const Mat& m) {
    auto c = span.coordinates(m.data());
    require(c.has_value(), ErrorKind::InvalidParameter, "basis is not closed under multiplication");
    return *c;
  };
  std::vector<std::vector<StructureTerm>> st(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vec c = coords(basis[i] * basis[j]);
      for (std::size_t k = 0; k < d; ++k)
        if (!c[k].is_zero(f.exact() ? 0.0 : 1e-13)) st[i * d + j].push_back({k, c[k]});
    }
  Vec unit = coords(Mat::identity(f, n));
  Vec trace;
  for (const auto& b : basis) trace.push_back(b.trace());
  return FiniteTraceAlgebra(f, std::move(labels), std::move(st), std::move(unit), std::move(trace),
                            static_cast<int>(n));
}

}  // namespace chtrace
