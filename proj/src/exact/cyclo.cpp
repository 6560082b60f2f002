#include "chtrace/cyclo.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "chtrace/errors.hpp"

namespace chtrace {

namespace {

using Poly = std::vector<Rational>;  // constant term first

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Exact long division of integer polynomials by a monic divisor.
std::vector<long> exact_divide(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> quo(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long c = num[k];
    quo[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  for (std::size_t i = 0; i < dn; ++i)
    require(num[i] == 0, ErrorKind::Arithmetic, "cyclotomic division left a remainder");
  return quo;
}

// (quotient, remainder) of a / b over Q.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational lead_inv = b.back().inverse();
  for (std::size_t k = a.size(); k-- >= b.size();) {
    if (a[k].is_zero()) continue;
    Rational c = a[k] * lead_inv;
    q[k - (b.size() - 1)] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[k - (b.size() - 1) + i] -= c * b[i];
  }
  trim(a);
  return {q, a};
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<long>& cyclotomic_polynomial(int n) {
  require(n >= 1, ErrorKind::InvalidParameter, "cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<std::vector<long>>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  std::vector<long> num(static_cast<std::size_t>(n) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) num = exact_divide(num, cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(n, std::make_unique<std::vector<long>>(std::move(num)));
  return *it->second;
}

void validate_cyclotomic_order(int ell) {
  require(ell >= 3 && ell % 2 == 1, ErrorKind::InvalidParameter,
          "cyclotomic order must be odd and >= 3, got " + std::to_string(ell));
}

CycloNum::CycloNum(int ell) : ell_(ell) {
  validate_cyclotomic_order(ell);
  coeffs_.assign(static_cast<std::size_t>(euler_phi(ell)), Rational(0));
}

CycloNum::CycloNum(int ell, std::vector<Rational> coeffs) : ell_(ell) {
  validate_cyclotomic_order(ell);
  const std::size_t phi = static_cast<std::size_t>(euler_phi(ell));
  // Accept any length and reduce, so callers may pass raw polynomials.
  const auto& cyc = cyclotomic_polynomial(ell);
  for (std::size_t k = coeffs.size(); k-- > phi;) {
    if (coeffs[k].is_zero()) continue;
    Rational c = coeffs[k];
    for (std::size_t i = 0; i < phi; ++i) {
      if (cyc[i] != 0) coeffs[k - phi + i] -= c * Rational(cyc[i]);
    }
    coeffs[k] = Rational(0);
  }
  coeffs.resize(phi, Rational(0));
  coeffs_ = std::move(coeffs);
}

CycloNum CycloNum::from_rational(int ell, const Rational& r) {
  CycloNum c(ell);
  c.coeffs_[0] = r;
  return c;
}

CycloNum CycloNum::root_power(int ell, long power) {
  validate_cyclotomic_order(ell);
  long k = power % ell;
  if (k < 0) k += ell;
  std::vector<Rational> raw(static_cast<std::size_t>(k) + 1, Rational(0));
  raw[static_cast<std::size_t>(k)] = Rational(1);
  return CycloNum(ell, std::move(raw));
}

bool CycloNum::is_zero() const noexcept {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool CycloNum::is_one() const noexcept {
  if (!coeffs_[0].is_one()) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

std::optional<Rational> CycloNum::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return std::nullopt;
  return coeffs_[0];
}

void CycloNum::check_same(const CycloNum& o) const {
  require(ell_ == o.ell_, ErrorKind::InvalidParameter,
          "cyclotomic order mismatch: " + std::to_string(ell_) + " vs " + std::to_string(o.ell_));
}

CycloNum CycloNum::operator-() const {
  CycloNum r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloNum& CycloNum::operator*=(const Rational& r) {
  for (auto& c : coeffs_) c *= r;
  return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  check_same(o);
  const std::size_t phi = coeffs_.size();
  std::vector<Rational> prod(2 * phi - 1, Rational(0));
  for (std::size_t i = 0; i < phi; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < phi; ++j) {
      if (!o.coeffs_[j].is_zero()) prod[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  *this = CycloNum(ell_, std::move(prod));
  return *this;
}

CycloNum CycloNum::inverse() const {
  require(!is_zero(), ErrorKind::Arithmetic, "inverse of zero in Q(eps)");
  // Invariant: s_i * a == r_i (mod Phi).
  Poly r0;
  for (long c : cyclotomic_polynomial(ell_)) r0.emplace_back(c);
  Poly r1 = coeffs_;
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, rem] = divmod(r0, r1);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant because Phi is irreducible.
  require(r1.size() == 1, ErrorKind::Arithmetic, "non-invertible element in Q(eps)");
  const Rational c = r1[0].inverse();
  for (auto& x : s1) x *= c;
  return CycloNum(ell_, std::move(s1));
}

CycloNum CycloNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloNum result = from_rational(ell_, Rational(1));
  CycloNum base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::complex<double> CycloNum::to_complex() const {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / ell_;
    acc += coeffs_[k].to_double() * std::polar(1.0, angle);
  }
  return acc;
}

std::string CycloNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_[k].to_string() << ")";
    if (k > 0) os << "*e^" << k;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace chtrace
