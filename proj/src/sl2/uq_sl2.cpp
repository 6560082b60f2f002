#include "chtrace/uq_sl2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chtrace/errors.hpp"
#include "chtrace/numeric.hpp"

namespace chtrace::sl2 {

namespace {

void check_ell(int a, int b) {
  require(a == b, ErrorKind::InvalidParameter,
          "elements live at different roots of unity (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

Complex eps(int ell) { return std::polar(1.0, 2.0 * std::numbers::pi / ell); }

}  // namespace

// ------------------------------------------------------------ PBW algebra

std::string Monomial::to_string() const {
  std::ostringstream os;
  bool any = false;
  if (a) {
    os << "F" << (a > 1 ? "^" + std::to_string(a) : "");
    any = true;
  }
  if (b) {
    os << (any ? " " : "") << "K" << (b != 1 ? "^" + std::to_string(b) : "");
    any = true;
  }
  if (c) {
    os << (any ? " " : "") << "E" << (c > 1 ? "^" + std::to_string(c) : "");
    any = true;
  }
  return any ? os.str() : "1";
}

UqElement::UqElement(int ell) : ell_(ell) { validate_cyclotomic_order(ell); }

UqElement UqElement::monomial(int ell, Monomial m, CycloNum coeff) {
  UqElement u(ell);
  u.add_term(m, coeff);
  return u;
}

UqElement UqElement::monomial(int ell, Monomial m) {
  return monomial(ell, m, CycloNum::from_rational(ell, Rational(1)));
}

UqElement UqElement::scalar(int ell, CycloNum c) { return monomial(ell, Monomial{}, std::move(c)); }
UqElement UqElement::one(int ell) { return monomial(ell, Monomial{}); }
UqElement UqElement::E(int ell) { return monomial(ell, Monomial{0, 0, 1}); }
UqElement UqElement::F(int ell) { return monomial(ell, Monomial{1, 0, 0}); }
UqElement UqElement::K(int ell, long p) { return monomial(ell, Monomial{0, p, 0}); }

CycloNum UqElement::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? CycloNum(ell_) : it->second;
}

void UqElement::add_term(const Monomial& m, const CycloNum& c) {
  require(m.a >= 0 && m.c >= 0, ErrorKind::InvalidParameter, "PBW exponents of E and F must be nonnegative");
  check_ell(ell_, c.ell());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

UqElement& UqElement::operator+=(const UqElement& o) {
  check_ell(ell_, o.ell_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

UqElement& UqElement::operator-=(const UqElement& o) {
  check_ell(ell_, o.ell_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

UqElement UqElement::scaled(const CycloNum& c) const {
  UqElement r(ell_);
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

std::string UqElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ") " + m.to_string();
  }
  return out;
}

CycloNum inv_eps_diff(int ell) {
  return (CycloNum::root_power(ell, 1) - CycloNum::root_power(ell, -1)).inverse();
}

namespace {

// Right multiplication of a single monomial by F, added into out with weight w.
// E^c F = F E^c + sum_{j<c} (eps^{-2j} K - eps^{2j} K^{-1}) / (eps - eps^{-1}) E^{c-1}.
void times_F(const Monomial& m, const CycloNum& w, const CycloNum& inv_diff, UqElement& out) {
  const int ell = out.ell();
  out.add_term(Monomial{m.a + 1, m.b, m.c}, w * CycloNum::root_power(ell, -2 * m.b));
  if (m.c == 0) return;
  CycloNum up(ell), down(ell);
  for (int j = 0; j < m.c; ++j) {
    up += CycloNum::root_power(ell, -2 * j);
    down += CycloNum::root_power(ell, 2 * j);
  }
  out.add_term(Monomial{m.a, m.b + 1, m.c - 1}, w * up * inv_diff);
  out.add_term(Monomial{m.a, m.b - 1, m.c - 1}, -(w * down * inv_diff));
}

}  // namespace

UqElement multiply(const UqElement& u, const UqElement& v) {
  check_ell(u.ell(), v.ell());
  const int ell = u.ell();
  const CycloNum inv_diff = inv_eps_diff(ell);
  UqElement result(ell);
  for (const auto& [mv, cv] : v.terms()) {
    // u * F^d K^e E^f, applied one generator at a time
    UqElement cur = u.scaled(cv);
    for (int i = 0; i < mv.a; ++i) {
      UqElement next(ell);
      for (const auto& [m, c] : cur.terms()) times_F(m, c, inv_diff, next);
      cur = std::move(next);
    }
    if (mv.b != 0) {
      UqElement next(ell);
      for (const auto& [m, c] : cur.terms())
        next.add_term(Monomial{m.a, m.b + mv.b, m.c}, c * CycloNum::root_power(ell, -2L * m.c * mv.b));
      cur = std::move(next);
    }
    if (mv.c != 0) {
      UqElement next(ell);
      for (const auto& [m, c] : cur.terms()) next.add_term(Monomial{m.a, m.b, m.c + mv.c}, c);
      cur = std::move(next);
    }
    result += cur;
  }
  return result;
}

UqElement power(const UqElement& u, int e) {
  require(e >= 0, ErrorKind::InvalidParameter, "negative power");
  UqElement r = UqElement::one(u.ell());
  for (int i = 0; i < e; ++i) r = multiply(r, u);
  return r;
}

UqElement commutator(const UqElement& u, const UqElement& v) { return multiply(u, v) - multiply(v, u); }

UqElement casimir(int ell) {
  const CycloNum d = inv_eps_diff(ell);
  const CycloNum d2 = d * d;
  UqElement omega = UqElement::monomial(ell, Monomial{1, 0, 1});
  omega.add_term(Monomial{0, 1, 0}, CycloNum::root_power(ell, 1) * d2);
  omega.add_term(Monomial{0, -1, 0}, CycloNum::root_power(ell, -1) * d2);
  return omega;
}

TensorElement::TensorElement(int ell) : ell_(ell) { validate_cyclotomic_order(ell); }

TensorElement TensorElement::pure(const UqElement& u, const UqElement& v) {
  check_ell(u.ell(), v.ell());
  TensorElement t(u.ell());
  for (const auto& [mu, cu] : u.terms())
    for (const auto& [mv, cv] : v.terms()) t.add_term(mu, mv, cu * cv);
  return t;
}

void TensorElement::add_term(const Monomial& l, const Monomial& r, const CycloNum& c) {
  check_ell(ell_, c.ell());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({l, r}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  check_ell(ell_, o.ell_);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

std::string TensorElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ") " + k.first.to_string() + " (x) " + k.second.to_string();
  }
  return out;
}

TensorElement multiply(const TensorElement& s, const TensorElement& t) {
  check_ell(s.ell(), t.ell());
  const int ell = s.ell();
  TensorElement r(ell);
  for (const auto& [ks, cs] : s.terms())
    for (const auto& [kt, ct] : t.terms()) {
      const UqElement left = multiply(UqElement::monomial(ell, ks.first), UqElement::monomial(ell, kt.first));
      const UqElement right = multiply(UqElement::monomial(ell, ks.second), UqElement::monomial(ell, kt.second));
      const CycloNum c = cs * ct;
      for (const auto& [ml, cl] : left.terms())
        for (const auto& [mr, cr] : right.terms()) r.add_term(ml, mr, c * cl * cr);
    }
  return r;
}

TensorElement power(const TensorElement& s, int e) {
  require(e >= 0, ErrorKind::InvalidParameter, "negative power");
  const int ell = s.ell();
  TensorElement r = TensorElement::pure(UqElement::one(ell), UqElement::one(ell));
  for (int i = 0; i < e; ++i) r = multiply(r, s);
  return r;
}

TensorElement coproduct_E(int ell) {
  return TensorElement::pure(UqElement::E(ell), UqElement::one(ell)) +
         TensorElement::pure(UqElement::K(ell), UqElement::E(ell));
}

TensorElement coproduct_F(int ell) {
  return TensorElement::pure(UqElement::F(ell), UqElement::K(ell, -1)) +
         TensorElement::pure(UqElement::one(ell), UqElement::F(ell));
}

TensorElement coproduct_K(int ell) { return TensorElement::pure(UqElement::K(ell), UqElement::K(ell)); }

// ------------------------------------------------------------ central characters

bool CentralCharZ0::generic() const { return x != Complex(0) || y != Complex(0); }

namespace {

std::string complex_str(Complex c) {
  std::ostringstream os;
  os.precision(12);
  os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

}  // namespace

std::string CentralCharZ0::to_string() const {
  return "(" + complex_str(x) + ", " + complex_str(z) + ", " + complex_str(y) + ")";
}

CentralCharZ0 z0_product(const CentralCharZ0& a, const CentralCharZ0& b) {
  require(b.z != Complex(0), ErrorKind::InvalidParameter, "z must be nonzero");
  return CentralCharZ0{a.x + a.z * b.x, a.z * b.z, a.y / b.z + b.y};
}

double distance(const CentralCharZ0& a, const CentralCharZ0& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.z - b.z), std::abs(a.y - b.y)});
}

json char_to_json(const CentralCharZ0& c) {
  return json{{"x", complex_to_json(c.x)}, {"z", complex_to_json(c.z)}, {"y", complex_to_json(c.y)}};
}

CentralCharZ0 char_from_json(const json& j) {
  try {
    if (j.is_array()) {
      require(j.size() == 3, ErrorKind::InvalidInput, "a character is a triple (x, z, y)");
      return CentralCharZ0{complex_from_json(j[0]), complex_from_json(j[1]), complex_from_json(j[2])};
    }
    return CentralCharZ0{complex_from_json(j.at("x")), complex_from_json(j.at("z")), complex_from_json(j.at("y"))};
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed character: ") + e.what());
  }
}

namespace {

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == s.size() && !s.empty(), ErrorKind::InvalidInput, "bad number '" + s + "'");
  return v;
}

Complex parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  require(!s.empty(), ErrorKind::InvalidInput, "empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  return {parse_real(s.substr(0, split)), imag_part(s.substr(split))};
}

}  // namespace

CentralCharZ0 parse_char(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  require(parts.size() == 3, ErrorKind::InvalidInput, "a character is written x,z,y");
  const CentralCharZ0 c{parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
  require(c.z != Complex(0), ErrorKind::InvalidInput, "z must be nonzero");
  return c;
}

CentralCharZ0 random_generic_char(int ell, std::mt19937_64& rng) {
  validate_cyclotomic_order(ell);
  std::uniform_real_distribution<double> radius(0.5, 2.0), zrad(0.8, 1.25), angle(0.0, 2.0 * std::numbers::pi);
  CentralCharZ0 c;
  {
    const double r = radius(rng);
    c.x = std::polar(r, angle(rng));
  }
  {
    const double r = radius(rng);
    c.y = std::polar(r, angle(rng));
  }
  do {
    const double r = zrad(rng);
    c.z = std::polar(r, angle(rng));
  } while (std::abs(std::pow(c.z, ell) - 1.0) < 0.1);
  return c;
}

CentralCharZ0 random_generic_char(int ell, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_generic_char(ell, rng);
}

// ------------------------------------------------------------ cyclic representations

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

MatrixXcd CyclicRep::Kinv() const { return K.inverse(); }

ModuleAction CyclicRep::action() const {
  return ModuleAction(ActingAlgebra::Full, ell, {{"E", E}, {"F", F}, {"K", K}, {"Kinv", Kinv()}});
}

namespace {

json matrix_json(const MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// mu_i = (lambda eps^{-2i} - lambda^{-1} eps^{2i}) / (eps - eps^{-1}); s_j = sum_{i<j} mu_i
std::vector<Complex> partial_weights(int ell, Complex lambda) {
  const Complex e = eps(ell), diff = e - 1.0 / e;
  std::vector<Complex> s(static_cast<std::size_t>(ell), 0.0);
  Complex acc = 0;
  for (int j = 0; j < ell; ++j) {
    s[static_cast<std::size_t>(j)] = acc;
    acc += (lambda * std::pow(e, -2 * j) - std::pow(e, 2 * j) / lambda) / diff;
  }
  return s;
}

Complex principal_root(Complex z, int ell) { return std::polar(std::pow(std::abs(z), 1.0 / ell), std::arg(z) / ell); }

Complex casimir_shift(int ell, Complex lambda) {
  const Complex e = eps(ell), diff = e - 1.0 / e;
  return (lambda * e + 1.0 / (lambda * e)) / (diff * diff);
}

CyclicRep assemble(int ell, Complex lambda, Complex g0, const std::vector<Complex>& e_coef,
                   const std::vector<Complex>& f_coef) {
  const auto n = static_cast<Eigen::Index>(ell);
  const Complex e = eps(ell);
  CyclicRep rep;
  rep.ell = ell;
  rep.lambda = lambda;
  rep.g0 = g0;
  rep.E = MatrixXcd::Zero(n, n);
  rep.F = MatrixXcd::Zero(n, n);
  rep.K = MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    rep.K(j, j) = lambda * std::pow(e, -2 * static_cast<int>(j));
    rep.F((j + 1) % n, j) = f_coef[static_cast<std::size_t>(j)];
    rep.E((j + n - 1) % n, j) = e_coef[static_cast<std::size_t>(j)];
  }
  return rep;
}

void certify(CyclicRep& rep, const Tolerances& tol, const CentralCharZ0* expected) {
  const auto res = relation_residuals(rep.ell, rep.E, rep.F, rep.K);
  require(res.max() <= tol.relation, ErrorKind::ConstructionFailed,
          "relation residual " + std::to_string(res.max()) + " exceeds tolerance");
  RepCharacter ch;
  try {
    ch = rep_character(rep.ell, rep.E, rep.F, rep.K, tol);
  } catch (const Error& err) {
    fail(ErrorKind::ConstructionFailed, err.what());
  }
  if (expected) {
    const double scale = std::max({1.0, std::abs(expected->x), std::abs(expected->y), std::abs(expected->z)});
    require(distance(ch.chi, *expected) <= tol.scalar * scale, ErrorKind::ConstructionFailed,
            "central character residual " + std::to_string(distance(ch.chi, *expected)) + " exceeds tolerance");
    rep.chi = *expected;
  } else {
    rep.chi = ch.chi;
  }
  rep.casimir_value = ch.casimir;
}

}  // namespace

std::vector<Complex> fiber_parameters(int ell, const CentralCharZ0& chi) {
  validate_cyclotomic_order(ell);
  require(chi.z != Complex(0), ErrorKind::InvalidParameter, "z must be nonzero");
  const Complex lambda = principal_root(chi.z, ell);
  const auto s = partial_weights(ell, lambda);
  // P(g) = prod_j (g + s_j) - x y, coefficients lowest degree first
  std::vector<Complex> p{1.0};
  for (const Complex sj : s) {
    std::vector<Complex> next(p.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k] += p[k] * sj;
      next[k + 1] += p[k];
    }
    p = std::move(next);
  }
  p[0] -= chi.x * chi.y;
  const auto n = static_cast<Eigen::Index>(ell);
  MatrixXcd companion = MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -p[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<MatrixXcd> es(companion, false);
  require(es.info() == Eigen::Success, ErrorKind::ConstructionFailed, "fiber polynomial root finding failed");
  std::vector<Complex> roots;
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex r = es.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      Complex val = p.back(), der = 0.0;
      for (std::size_t k = p.size() - 1; k-- > 0;) {
        der = der * r + val;
        val = val * r + p[k];
      }
      if (std::abs(der) < 1e-300) break;
      r -= val / der;
    }
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return roots;
}

CyclicRep build_cyclic_rep(int ell, const CentralCharZ0& chi, int branch, const Tolerances& tol) {
  validate_cyclotomic_order(ell);
  require(chi.z != Complex(0), ErrorKind::InvalidParameter, "z must be nonzero");
  if (!chi.generic()) fail(ErrorKind::UnsupportedCharacter, "characters with x = y = 0 are not supported");
  require(branch >= 0 && branch < ell, ErrorKind::InvalidParameter,
          "branch must lie in 0.." + std::to_string(ell - 1));
  const Complex lambda = principal_root(chi.z, ell);
  const auto s = partial_weights(ell, lambda);
  const Complex g0 = fiber_parameters(ell, chi)[static_cast<std::size_t>(branch)];
  const auto L = static_cast<std::size_t>(ell);
  std::vector<Complex> g(L), e(L), f(L);
  for (std::size_t j = 0; j < L; ++j) g[j] = g0 + s[j];
  if (chi.y != Complex(0)) {
    std::fill(f.begin(), f.end(), 1.0);
    f[L - 1] = chi.y;
    for (std::size_t j = 0; j < L; ++j) e[j] = g[j] / f[(j + L - 1) % L];
  } else {
    std::fill(e.begin(), e.end(), 1.0);
    e[0] = chi.x;
    for (std::size_t j = 0; j < L; ++j) f[(j + L - 1) % L] = g[j] / e[j];
  }
  CyclicRep rep = assemble(ell, lambda, g0, e, f);
  rep.branch = branch;
  certify(rep, tol, &chi);
  return rep;
}

CyclicRep build_highest_weight_rep(int ell, int k, const Tolerances& tol) {
  validate_cyclotomic_order(ell);
  const Complex lambda = std::pow(eps(ell), k);
  const auto s = partial_weights(ell, lambda);
  const auto L = static_cast<std::size_t>(ell);
  std::vector<Complex> e(L), f(L, 1.0);
  f[L - 1] = 0.0;
  e[0] = 0.0;
  for (std::size_t j = 1; j < L; ++j) e[j] = s[j];
  CyclicRep rep = assemble(ell, lambda, 0.0, e, f);
  rep.branch = k;
  certify(rep, tol, nullptr);
  return rep;
}

MatrixXcd evaluate(const UqElement& u, const MatrixXcd& E, const MatrixXcd& F, const MatrixXcd& K) {
  const Eigen::Index n = E.rows();
  MatrixXcd out = MatrixXcd::Zero(n, n);
  const MatrixXcd Kinv = K.inverse();
  for (const auto& [m, c] : u.terms()) {
    const MatrixXcd kpart = m.b >= 0 ? numeric::matrix_power(K, m.b) : numeric::matrix_power(Kinv, -m.b);
    out += c.to_complex() * (numeric::matrix_power(F, m.a) * kpart * numeric::matrix_power(E, m.c));
  }
  return out;
}

RelationResiduals relation_residuals(int ell, const MatrixXcd& E, const MatrixXcd& F, const MatrixXcd& K) {
  const Complex e = eps(ell);
  const MatrixXcd Kinv = K.inverse();
  RelationResiduals r;
  r.ke = (K * E - e * e * E * K).norm() / std::max(1.0, K.norm() * E.norm());
  r.kf = (K * F - F * K / (e * e)).norm() / std::max(1.0, K.norm() * F.norm());
  r.ef = (E * F - F * E - (K - Kinv) / (e - 1.0 / e)).norm() /
         std::max(1.0, E.norm() * F.norm() + K.norm() + Kinv.norm());
  return r;
}

namespace {

Complex read_scalar(const MatrixXcd& m, const Tolerances& tol, const char* what) {
  Complex v;
  if (!numeric::scalar_value(m, tol.scalar, v)) fail(ErrorKind::InvalidRep, std::string(what) + " does not act by a scalar");
  return v;
}

}  // namespace

CentralCharZ0 central_character(int ell, const MatrixXcd& E, const MatrixXcd& F, const MatrixXcd& K,
                                const Tolerances& tol) {
  return CentralCharZ0{read_scalar(numeric::matrix_power(E, ell), tol, "E^ell"),
                       read_scalar(numeric::matrix_power(K, ell), tol, "K^ell"),
                       read_scalar(numeric::matrix_power(F, ell), tol, "F^ell")};
}

RepCharacter rep_character(int ell, const MatrixXcd& E, const MatrixXcd& F, const MatrixXcd& K, const Tolerances& tol) {
  return RepCharacter{central_character(ell, E, F, K, tol), read_scalar(evaluate(casimir(ell), E, F, K), tol, "the Casimir")};
}

RepCharacter rep_character(const CyclicRep& rep, const Tolerances& tol) {
  return rep_character(rep.ell, rep.E, rep.F, rep.K, tol);
}

ModuleAction tensor_action(const CyclicRep& a, const CyclicRep& b) {
  check_ell(a.ell, b.ell);
  const auto n = a.E.rows(), m = b.E.rows();
  const MatrixXcd Ia = MatrixXcd::Identity(n, n), Ib = MatrixXcd::Identity(m, m);
  const MatrixXcd K = kron(a.K, b.K);
  return ModuleAction(ActingAlgebra::Full, a.ell,
                      {{"E", kron(a.E, Ib) + kron(a.K, b.E)},
                       {"F", kron(a.F, b.Kinv()) + kron(Ia, b.F)},
                       {"K", K},
                       {"Kinv", kron(a.Kinv(), b.Kinv())}});
}

ModuleAction borel_restriction(const CyclicRep& r) {
  return ModuleAction(ActingAlgebra::Borel, r.ell, {{"E", r.E}, {"K", r.K}, {"Kinv", r.Kinv()}});
}

MatrixXcd casimir_matrix(const ModuleAction& act) {
  require(act.ell >= 3, ErrorKind::InvalidParameter, "action is not attached to a root of unity");
  return evaluate(casimir(act.ell), act.get("E"), act.get("F"), act.get("K"));
}

json CyclicRep::to_json() const {
  return json{{"schema", "chtrace/1"},
              {"ell", ell},
              {"branch", branch},
              {"chi", char_to_json(chi)},
              {"lambda", complex_to_json(lambda)},
              {"casimir", complex_to_json(casimir_value)},
              {"E", matrix_json(E)},
              {"F", matrix_json(F)},
              {"K", matrix_json(K)}};
}

}  // namespace chtrace::sl2
