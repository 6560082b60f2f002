#pragma once

#include <complex>
#include <string>
#include <variant>

#include "chtrace/cyclo.hpp"
#include "chtrace/rational.hpp"

namespace chtrace {

using Complex = std::complex<double>;

enum class ScalarTag { Rat, Cyc, C64 };

/// Coefficient field of an algebra or matrix: Q, Q(eps_ell) or complex
/// floating point (with eps_ell embedded as exp(2 pi i / ell)).
struct Field {
  ScalarTag tag = ScalarTag::Rat;
  int ell = 0;  // only meaningful for Cyc

  static Field rationals() { return {ScalarTag::Rat, 0}; }
  static Field cyclotomic(int ell);
  static Field complex() { return {ScalarTag::C64, 0}; }

  bool exact() const noexcept { return tag != ScalarTag::C64; }
  /// "Q", "cyc:5" or "C64".
  std::string name() const;
  static Field parse(const std::string& name);

  friend bool operator==(const Field&, const Field&) = default;
};

/// Tagged scalar. Arithmetic requires matching tags; promotion along
/// Rat -> Cyc -> C64 is always explicit.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(Rational r) : v_(std::move(r)) {}   // NOLINT(google-explicit-constructor)
  Scalar(CycloNum c) : v_(std::move(c)) {}   // NOLINT(google-explicit-constructor)
  Scalar(Complex z) : v_(z) {}               // NOLINT(google-explicit-constructor)
  Scalar(long v) : v_(Rational(v)) {}        // NOLINT(google-explicit-constructor)
  Scalar(int v) : v_(Rational(v)) {}         // NOLINT(google-explicit-constructor)

  static Scalar zero(const Field& f);
  static Scalar one(const Field& f);
  static Scalar from_rational(const Field& f, const Rational& r);

  ScalarTag tag() const noexcept { return static_cast<ScalarTag>(v_.index()); }
  /// The smallest field holding this value.
  Field field() const;

  const Rational& rat() const;
  const CycloNum& cyc() const;
  Complex c64() const;

  bool is_zero() const noexcept;
  /// |value| <= tol for complex values, exact test otherwise.
  bool is_zero(double tol) const noexcept;
  bool is_one() const noexcept;

  /// Explicit promotion; throws invalid-parameter when demotion is requested.
  Scalar promote(const Field& target) const;

  /// Homomorphism into C (eps -> exp(2 pi i / ell)).
  Complex embed() const;
  /// Absolute value as double (for pivoting and tolerance tests).
  double magnitude() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact equality for exact tags, bitwise for complex. Mismatched tags
  /// compare unequal.
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }

  std::string to_string() const;

 private:
  void check_tags(const Scalar& o, const char* op) const;

  std::variant<Rational, CycloNum, Complex> v_;
};

/// Smallest field containing both; used at explicit conversion boundaries.
Field join(const Field& a, const Field& b);

}  // namespace chtrace
