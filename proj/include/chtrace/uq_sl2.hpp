#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "chtrace/cyclo.hpp"
#include "chtrace/module_action.hpp"
#include "chtrace/scalar_json.hpp"

namespace chtrace::sl2 {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;

// ------------------------------------------------------------ PBW algebra

/// PBW monomial F^a K^b E^c.
struct Monomial {
  int a = 0;
  long b = 0;
  int c = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  std::string to_string() const;
};

/// Element of U_eps(sl2) in PBW normal form, exact over Q(eps).
class UqElement {
 public:
  explicit UqElement(int ell);
  static UqElement monomial(int ell, Monomial m, CycloNum coeff);
  static UqElement monomial(int ell, Monomial m);
  static UqElement scalar(int ell, CycloNum c);
  static UqElement one(int ell);
  static UqElement E(int ell);
  static UqElement F(int ell);
  static UqElement K(int ell, long power = 1);

  int ell() const noexcept { return ell_; }
  const std::map<Monomial, CycloNum>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Coefficient of m (zero when absent).
  CycloNum coeff(const Monomial& m) const;
  void add_term(const Monomial& m, const CycloNum& c);

  UqElement& operator+=(const UqElement& o);
  UqElement& operator-=(const UqElement& o);
  UqElement scaled(const CycloNum& c) const;
  friend UqElement operator+(UqElement a, const UqElement& b) { return a += b; }
  friend UqElement operator-(UqElement a, const UqElement& b) { return a -= b; }
  friend bool operator==(const UqElement& a, const UqElement& b) { return a.ell_ == b.ell_ && a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  int ell_;
  std::map<Monomial, CycloNum> terms_;
};

/// Exact PBW product; throws invalid-parameter on an ell mismatch.
UqElement multiply(const UqElement& u, const UqElement& v);
UqElement power(const UqElement& u, int e);
UqElement commutator(const UqElement& u, const UqElement& v);

/// 1 / (eps - eps^{-1}).
CycloNum inv_eps_diff(int ell);

/// FE + (K eps + K^{-1} eps^{-1}) / (eps - eps^{-1})^2.
UqElement casimir(int ell);

/// Element of U (x) U as a map from monomial pairs to coefficients.
class TensorElement {
 public:
  explicit TensorElement(int ell);
  static TensorElement pure(const UqElement& u, const UqElement& v);

  int ell() const noexcept { return ell_; }
  const std::map<std::pair<Monomial, Monomial>, CycloNum>& terms() const noexcept { return terms_; }
  void add_term(const Monomial& l, const Monomial& r, const CycloNum& c);

  TensorElement& operator+=(const TensorElement& o);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.ell_ == b.ell_ && a.terms_ == b.terms_;
  }
  std::string to_string() const;

 private:
  int ell_;
  std::map<std::pair<Monomial, Monomial>, CycloNum> terms_;
};

TensorElement multiply(const TensorElement& s, const TensorElement& t);
TensorElement power(const TensorElement& s, int e);

/// Coproduct of the generators: E (x) 1 + K (x) E, F (x) K^{-1} + 1 (x) F, K (x) K.
TensorElement coproduct_E(int ell);
TensorElement coproduct_F(int ell);
TensorElement coproduct_K(int ell);

// ------------------------------------------------------------ central characters

/// Values of (E^ell, K^ell, F^ell) on a module.
struct CentralCharZ0 {
  Complex x{0, 0}, z{1, 0}, y{0, 0};
  bool generic() const;  // x != 0 or y != 0
  std::string to_string() const;
};

CentralCharZ0 z0_product(const CentralCharZ0& a, const CentralCharZ0& b);
double distance(const CentralCharZ0& a, const CentralCharZ0& b);

json char_to_json(const CentralCharZ0& c);
CentralCharZ0 char_from_json(const json& j);
/// "x,z,y" with each entry a real number or re+imi / re-imi.
CentralCharZ0 parse_char(const std::string& text);

/// x, y with modulus uniform in [0.5, 2] and uniform argument; z with modulus
/// uniform in [0.8, 1.25], resampled while |z^ell - 1| < 0.1.
CentralCharZ0 random_generic_char(int ell, std::mt19937_64& rng);
CentralCharZ0 random_generic_char(int ell, std::uint64_t seed);

// ------------------------------------------------------------ cyclic representations

struct Tolerances {
  double relation = 1e-9;  // defining relations, relative to the matrix norms
  double scalar = 1e-8;    // scalarness of ell-th powers
};

struct CyclicRep {
  int ell = 0;
  MatrixXcd E, F, K;
  Complex lambda;  // K v_0 = lambda v_0
  Complex g0;      // FE v_0 = g0 v_0
  int branch = 0;
  CentralCharZ0 chi;
  Complex casimir_value;

  MatrixXcd Kinv() const;
  ModuleAction action() const;
  json to_json() const;
};

/// Candidate values of g0 = f_{ell-1} e_0 over chi, sorted by (re, im);
/// branch k of build_cyclic_rep uses entry k.
std::vector<Complex> fiber_parameters(int ell, const CentralCharZ0& chi);

/// ell-dimensional cyclic module with central character chi. Throws
/// unsupported-character when x = y = 0 and construction-failed when the
/// relation or scalar residuals exceed the tolerances.
CyclicRep build_cyclic_rep(int ell, const CentralCharZ0& chi, int branch, const Tolerances& tol = {});

/// Highest-weight module with K v_0 = eps^k v_0, E v_0 = 0 and F v_{ell-1} = 0
/// (character (0, 1, 0)).
CyclicRep build_highest_weight_rep(int ell, int k, const Tolerances& tol = {});

/// Sum of coeff * F^a K^b E^c on the given matrices.
MatrixXcd evaluate(const UqElement& u, const MatrixXcd& E, const MatrixXcd& F, const MatrixXcd& K);

struct RelationResiduals {
  double ke = 0, kf = 0, ef = 0;  // relative residuals
  double max() const { return std::max({ke, kf, ef}); }
};

RelationResiduals relation_residuals(int ell, const MatrixXcd& E, const MatrixXcd& F, const MatrixXcd& K);

struct RepCharacter {
  CentralCharZ0 chi;
  Complex casimir;
};

/// Reads the scalars of E^ell, K^ell, F^ell and of the Casimir; throws
/// invalid-rep if any of them is not scalar within tol.scalar.
RepCharacter rep_character(int ell, const MatrixXcd& E, const MatrixXcd& F, const MatrixXcd& K,
                           const Tolerances& tol = {});
RepCharacter rep_character(const CyclicRep& rep, const Tolerances& tol = {});
/// Only the (E^ell, K^ell, F^ell) scalars; the Casimir need not be scalar.
CentralCharZ0 central_character(int ell, const MatrixXcd& E, const MatrixXcd& F, const MatrixXcd& K,
                                const Tolerances& tol = {});

/// Delta(E) = E (x) 1 + K (x) E, Delta(F) = F (x) K^{-1} + 1 (x) F, Delta(K) = K (x) K.
ModuleAction tensor_action(const CyclicRep& a, const CyclicRep& b);
/// Generators E, K, Kinv only.
ModuleAction borel_restriction(const CyclicRep& r);

/// Casimir evaluated on the E, F, K generators of a full action.
MatrixXcd casimir_matrix(const ModuleAction& act);

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);

}  // namespace chtrace::sl2
