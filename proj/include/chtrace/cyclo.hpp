#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "chtrace/rational.hpp"

namespace chtrace {

/// Euler totient.
int euler_phi(int n);

/// Integer coefficients (constant term first) of the n-th cyclotomic
/// polynomial, obtained by exact division of q^n - 1 by the lower Phi_d.
const std::vector<long>& cyclotomic_polynomial(int n);

/// Throws invalid-parameter unless ell is odd and >= 3.
void validate_cyclotomic_order(int ell);

/// Element of Q(eps), eps = exp(2 pi i / ell), in the power basis
/// 1, q, ..., q^{phi(ell)-1} of Q[q] / Phi_ell(q).
class CycloNum {
 public:
  explicit CycloNum(int ell);  // zero
  CycloNum(int ell, std::vector<Rational> coeffs);

  static CycloNum from_rational(int ell, const Rational& r);
  /// eps^power, any integer power.
  static CycloNum root_power(int ell, long power);

  int ell() const noexcept { return ell_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  /// The rational value when the element lies in Q.
  std::optional<Rational> as_rational() const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator*=(const Rational& r);
  CycloNum& operator/=(const CycloNum& o) { return *this *= o.inverse(); }

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
  friend CycloNum operator*(CycloNum a, const Rational& r) { return a *= r; }
  friend CycloNum operator*(const Rational& r, CycloNum a) { return a *= r; }
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }

  /// Multiplicative inverse via extended Euclid against Phi_ell.
  CycloNum inverse() const;
  CycloNum pow(long e) const;

  std::complex<double> to_complex() const;
  std::string to_string() const;

  friend bool operator==(const CycloNum& a, const CycloNum& b) {
    return a.ell_ == b.ell_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_same(const CycloNum& o) const;

  int ell_;
  std::vector<Rational> coeffs_;
};

}  // namespace chtrace
