#include "chtrace/scalar.hpp"

#include <cmath>
#include <sstream>

#include "chtrace/errors.hpp"

namespace chtrace {

namespace {
const char* tag_name(ScalarTag t) {
  switch (t) {
    case ScalarTag::Rat: return "rat";
    case ScalarTag::Cyc: return "cyc";
    case ScalarTag::C64: return "c64";
  }
  return "?";
}
}  // namespace

Field Field::cyclotomic(int ell) {
  validate_cyclotomic_order(ell);
  return {ScalarTag::Cyc, ell};
}

std::string Field::name() const {
  switch (tag) {
    case ScalarTag::Rat: return "Q";
    case ScalarTag::Cyc: return "cyc:" + std::to_string(ell);
    case ScalarTag::C64: return "C64";
  }
  return "?";
}

Field Field::parse(const std::string& name) {
  if (name == "Q") return rationals();
  if (name == "C64") return complex();
  if (name.rfind("cyc:", 0) == 0) {
    int ell = 0;
    try {
      ell = std::stoi(name.substr(4));
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidInput, "bad field name '" + name + "'");
    }
    return cyclotomic(ell);
  }
  fail(ErrorKind::InvalidInput, "unknown field '" + name + "' (expected Q, cyc:<ell> or C64)");
}

Field join(const Field& a, const Field& b) {
  if (a.tag == ScalarTag::C64 || b.tag == ScalarTag::C64) return Field::complex();
  if (a.tag == ScalarTag::Cyc && b.tag == ScalarTag::Cyc) {
    require(a.ell == b.ell, ErrorKind::InvalidParameter, "cyclotomic fields of different order");
    return a;
  }
  if (a.tag == ScalarTag::Cyc) return a;
  return b;
}

Scalar Scalar::zero(const Field& f) { return from_rational(f, Rational(0)); }
Scalar Scalar::one(const Field& f) { return from_rational(f, Rational(1)); }

Scalar Scalar::from_rational(const Field& f, const Rational& r) {
  switch (f.tag) {
    case ScalarTag::Rat: return Scalar(r);
    case ScalarTag::Cyc: return Scalar(CycloNum::from_rational(f.ell, r));
    case ScalarTag::C64: return Scalar(Complex(r.to_double(), 0.0));
  }
  return Scalar(r);
}

Field Scalar::field() const {
  switch (tag()) {
    case ScalarTag::Rat: return Field::rationals();
    case ScalarTag::Cyc: return Field::cyclotomic(std::get<CycloNum>(v_).ell());
    case ScalarTag::C64: return Field::complex();
  }
  return Field::rationals();
}

const Rational& Scalar::rat() const {
  require(tag() == ScalarTag::Rat, ErrorKind::InvalidParameter, "scalar is not rational");
  return std::get<Rational>(v_);
}

const CycloNum& Scalar::cyc() const {
  require(tag() == ScalarTag::Cyc, ErrorKind::InvalidParameter, "scalar is not cyclotomic");
  return std::get<CycloNum>(v_);
}

Complex Scalar::c64() const {
  require(tag() == ScalarTag::C64, ErrorKind::InvalidParameter, "scalar is not complex");
  return std::get<Complex>(v_);
}

bool Scalar::is_zero() const noexcept {
  switch (tag()) {
    case ScalarTag::Rat: return std::get<Rational>(v_).is_zero();
    case ScalarTag::Cyc: return std::get<CycloNum>(v_).is_zero();
    case ScalarTag::C64: return std::get<Complex>(v_) == Complex(0.0, 0.0);
  }
  return false;
}

bool Scalar::is_zero(double tol) const noexcept {
  if (tag() == ScalarTag::C64) return std::abs(std::get<Complex>(v_)) <= tol;
  return is_zero();
}

bool Scalar::is_one() const noexcept {
  switch (tag()) {
    case ScalarTag::Rat: return std::get<Rational>(v_).is_one();
    case ScalarTag::Cyc: return std::get<CycloNum>(v_).is_one();
    case ScalarTag::C64: return std::get<Complex>(v_) == Complex(1.0, 0.0);
  }
  return false;
}

Scalar Scalar::promote(const Field& target) const {
  const ScalarTag from = tag();
  if (from == target.tag) {
    if (from == ScalarTag::Cyc)
      require(cyc().ell() == target.ell, ErrorKind::InvalidParameter,
              "cannot move between cyclotomic fields of different order");
    return *this;
  }
  if (from == ScalarTag::Rat && target.tag == ScalarTag::Cyc)
    return Scalar(CycloNum::from_rational(target.ell, rat()));
  if (target.tag == ScalarTag::C64) return Scalar(embed());
  fail(ErrorKind::InvalidParameter,
       std::string("no promotion path from ") + tag_name(from) + " to " + target.name());
}

Complex Scalar::embed() const {
  switch (tag()) {
    case ScalarTag::Rat: return {std::get<Rational>(v_).to_double(), 0.0};
    case ScalarTag::Cyc: return std::get<CycloNum>(v_).to_complex();
    case ScalarTag::C64: return std::get<Complex>(v_);
  }
  return {};
}

double Scalar::magnitude() const {
  if (tag() == ScalarTag::Rat) return std::fabs(std::get<Rational>(v_).to_double());
  return std::abs(embed());
}

void Scalar::check_tags(const Scalar& o, const char* op) const {
  if (tag() != o.tag())
    fail(ErrorKind::InvalidParameter, std::string("scalar tag mismatch in ") + op + ": " +
                                          tag_name(tag()) + " vs " + tag_name(o.tag()));
}

Scalar Scalar::operator-() const {
  return std::visit([](const auto& x) { return Scalar(-x); }, v_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_tags(o, "add");
  std::visit([&](auto& x) { x += std::get<std::decay_t<decltype(x)>>(o.v_); }, v_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_tags(o, "sub");
  std::visit([&](auto& x) { x -= std::get<std::decay_t<decltype(x)>>(o.v_); }, v_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_tags(o, "mul");
  std::visit([&](auto& x) { x *= std::get<std::decay_t<decltype(x)>>(o.v_); }, v_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_tags(o, "div");
  require(!o.is_zero(), ErrorKind::Arithmetic, "division by zero");
  std::visit([&](auto& x) { x /= std::get<std::decay_t<decltype(x)>>(o.v_); }, v_);
  return *this;
}

Scalar Scalar::inverse() const {
  require(!is_zero(), ErrorKind::Arithmetic, "inverse of zero");
  switch (tag()) {
    case ScalarTag::Rat: return Scalar(std::get<Rational>(v_).inverse());
    case ScalarTag::Cyc: return Scalar(std::get<CycloNum>(v_).inverse());
    case ScalarTag::C64: return Scalar(1.0 / std::get<Complex>(v_));
  }
  return *this;
}

std::string Scalar::to_string() const {
  switch (tag()) {
    case ScalarTag::Rat: return std::get<Rational>(v_).to_string();
    case ScalarTag::Cyc: return std::get<CycloNum>(v_).to_string();
    case ScalarTag::C64: {
      std::ostringstream os;
      os.precision(17);
      const Complex z = std::get<Complex>(v_);
      os << z.real() << (z.imag() < 0 ? "-" : "+") << std::fabs(z.imag()) << "i";
      return os.str();
    }
  }
  return "?";
}

}  // namespace chtrace
