#include <cmath>
#include <numbers>
#include <random>

#include "chtrace/errors.hpp"
#include "chtrace/uq_sl2.hpp"
#include "doctest.h"

using namespace chtrace;
using namespace chtrace::sl2;

namespace {

Complex eps_c(int ell) { return std::polar(1.0, 2.0 * std::numbers::pi / ell); }

CycloNum rat(int ell, long v) { return CycloNum::from_rational(ell, Rational(v)); }

UqElement random_element(int ell, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> exp(0, 2), kexp(-2, 2), coef(-3, 3), count(1, 4);
  UqElement u(ell);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    CycloNum c = rat(ell, coef(rng)) * CycloNum::root_power(ell, exp(rng));
    u.add_term(Monomial{exp(rng), kexp(rng), exp(rng)}, c);
  }
  return u;
}

double rel_diff(const MatrixXcd& a, const MatrixXcd& b) { return (a - b).norm() / std::max(1.0, a.norm()); }

}  // namespace

TEST_CASE("PBW normal ordering of generator products") {
  for (int ell : {3, 5, 7}) {
    const auto E = UqElement::E(ell), F = UqElement::F(ell), K = UqElement::K(ell);
    // E F = F E + (K - K^{-1}) / (eps - eps^{-1})
    UqElement expect = UqElement::monomial(ell, Monomial{1, 0, 1});
    expect.add_term(Monomial{0, 1, 0}, inv_eps_diff(ell));
    expect.add_term(Monomial{0, -1, 0}, -inv_eps_diff(ell));
    CHECK(multiply(E, F) == expect);
    CHECK(multiply(K, E) == multiply(E, K).scaled(CycloNum::root_power(ell, 2)));
    CHECK(multiply(K, F) == multiply(F, K).scaled(CycloNum::root_power(ell, -2)));
    CHECK(multiply(K, UqElement::K(ell, -1)) == UqElement::one(ell));
  }
}

TEST_CASE("ell-th powers of generators are central") {
  for (int ell : {3, 5}) {
    const auto E = UqElement::E(ell), F = UqElement::F(ell), K = UqElement::K(ell);
    for (const auto& z : {power(E, ell), power(F, ell), power(K, ell)})
      for (const auto& g : {E, F, K}) CHECK(commutator(z, g).is_zero());
    CHECK_FALSE(commutator(power(E, ell - 1), F).is_zero());
  }
}

TEST_CASE("Casimir is central with three PBW terms") {
  for (int ell : {3, 5}) {
    const auto omega = casimir(ell);
    CHECK(omega.terms().size() == 3);
    CHECK(omega.coeff(Monomial{1, 0, 1}) == rat(ell, 1));
    CHECK_FALSE(omega.coeff(Monomial{0, 1, 0}).is_zero());
    CHECK_FALSE(omega.coeff(Monomial{0, -1, 0}).is_zero());
    for (const auto& g : {UqElement::E(ell), UqElement::F(ell), UqElement::K(ell)})
      CHECK(commutator(omega, g).is_zero());
  }
}

TEST_CASE("PBW product is associative") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int ell = t % 2 ? 5 : 3;
    const auto a = random_element(ell, rng), b = random_element(ell, rng), c = random_element(ell, rng);
    REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("PBW product agrees with matrices of cyclic modules") {
  std::mt19937_64 rng(5);
  for (int ell : {3, 5}) {
    const auto rep = build_cyclic_rep(ell, random_generic_char(ell, 99u + ell), 0);
    for (int t = 0; t < 30; ++t) {
      const auto a = random_element(ell, rng), b = random_element(ell, rng);
      const MatrixXcd lhs = evaluate(multiply(a, b), rep.E, rep.F, rep.K);
      const MatrixXcd rhs = evaluate(a, rep.E, rep.F, rep.K) * evaluate(b, rep.E, rep.F, rep.K);
      CHECK(rel_diff(lhs, rhs) < 1e-9);
    }
  }
}

TEST_CASE("mixed roots of unity are rejected") {
  CHECK_THROWS_AS(multiply(UqElement::E(3), UqElement::F(5)), Error);
}

TEST_CASE("coproduct is an algebra map on central powers") {
  for (int ell : {3, 5}) {
    const auto dE = coproduct_E(ell), dF = coproduct_F(ell), dK = coproduct_K(ell);
    const auto one = UqElement::one(ell);
    // (E (x) 1 + K (x) E)^ell = E^ell (x) 1 + K^ell (x) E^ell
    CHECK(power(dE, ell) == TensorElement::pure(power(UqElement::E(ell), ell), one) +
                                TensorElement::pure(UqElement::K(ell, ell), power(UqElement::E(ell), ell)));
    CHECK(power(dF, ell) == TensorElement::pure(power(UqElement::F(ell), ell), UqElement::K(ell, -ell)) +
                                TensorElement::pure(one, power(UqElement::F(ell), ell)));
    CHECK(power(dK, ell) == TensorElement::pure(UqElement::K(ell, ell), UqElement::K(ell, ell)));
    // K E K^{-1} = eps^2 E survives the coproduct
    const auto dKinv = TensorElement::pure(UqElement::K(ell, -1), UqElement::K(ell, -1));
    TensorElement scaled_dE(ell);
    for (const auto& [k, c] : dE.terms()) scaled_dE.add_term(k.first, k.second, c * CycloNum::root_power(ell, 2));
    CHECK(multiply(multiply(dK, dE), dKinv) == scaled_dE);
  }
}

TEST_CASE("z0 product") {
  const CentralCharZ0 id{0, 1, 0};
  const CentralCharZ0 a{Complex(1, 2), Complex(0.5, -1), Complex(-3, 0.25)};
  CHECK(distance(z0_product(id, a), a) < 1e-15);
  CHECK(distance(z0_product(a, id), a) < 1e-15);
  const auto p = z0_product(CentralCharZ0{1, 1, 0}, CentralCharZ0{0, 1, 1});
  CHECK(distance(p, CentralCharZ0{1, 1, 1}) < 1e-15);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_generic_char(5, rng), y = random_generic_char(5, rng), z = random_generic_char(5, rng);
    CHECK(distance(z0_product(z0_product(x, y), z), z0_product(x, z0_product(y, z))) < 1e-12);
  }
}

TEST_CASE("character parsing and json") {
  const auto c = parse_char("1, 2-0.5i, -3i");
  CHECK(c.x == Complex(1, 0));
  CHECK(c.z == Complex(2, -0.5));
  CHECK(c.y == Complex(0, -3));
  CHECK(parse_char("1e-2+1e-3i,1,0").x == Complex(1e-2, 1e-3));
  CHECK(distance(char_from_json(char_to_json(c)), c) == 0.0);
  CHECK_THROWS_AS(parse_char("1,2"), Error);
  CHECK_THROWS_AS(parse_char("1,0,1"), Error);
  CHECK_THROWS_AS(parse_char("a,1,1"), Error);
}

TEST_CASE("random characters are deterministic and in range") {
  for (int ell : {3, 5, 7}) {
    CHECK(distance(random_generic_char(ell, 42u), random_generic_char(ell, 42u)) == 0.0);
    std::mt19937_64 rng(ell);
    for (int t = 0; t < 200; ++t) {
      const auto c = random_generic_char(ell, rng);
      CHECK(std::abs(c.x) >= 0.5);
      CHECK(std::abs(c.x) <= 2.0);
      CHECK(std::abs(c.y) >= 0.5);
      CHECK(std::abs(c.z) >= 0.8);
      CHECK(std::abs(c.z) <= 1.25);
      CHECK(std::abs(std::pow(c.z, ell) - 1.0) >= 0.1);
    }
  }
}

TEST_CASE("cyclic modules realise their character") {
  for (int ell : {3, 5, 7}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto chi = random_generic_char(ell, s);
      for (int branch = 0; branch < ell; ++branch) {
        const auto rep = build_cyclic_rep(ell, chi, branch);
        CHECK(rep.E.rows() == ell);
        CHECK(relation_residuals(ell, rep.E, rep.F, rep.K).max() < 1e-10);
        const auto ch = rep_character(rep);
        CHECK(distance(ch.chi, chi) < 1e-9 * (1 + std::abs(chi.x * chi.y)));
        // Casimir acts by g0 + (lambda eps + 1/(lambda eps)) / (eps - 1/eps)^2
        const Complex e = eps_c(ell);
        const Complex expect = rep.g0 + (rep.lambda * e + 1.0 / (rep.lambda * e)) / std::pow(e - 1.0 / e, 2);
        CHECK(std::abs(ch.casimir - expect) < 1e-8 * std::max(1.0, std::abs(expect)));
        CHECK(std::abs(rep.casimir_value - ch.casimir) < 1e-9 * std::max(1.0, std::abs(expect)));
      }
    }
  }
}

TEST_CASE("the (1,1,1) character at ell = 3") {
  const CentralCharZ0 chi{1, 1, 1};
  std::vector<Complex> values;
  for (int b = 0; b < 3; ++b) {
    const auto rep = build_cyclic_rep(3, chi, b);
    CHECK(relation_residuals(3, rep.E, rep.F, rep.K).max() < 1e-10);
    values.push_back(rep.casimir_value);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(std::abs(values[i] - values[j]) > 1e-6);
}

TEST_CASE("fiber parameters solve the fiber polynomial") {
  const CentralCharZ0 chi{Complex(0.7, 0.2), Complex(1.1, 0.3), Complex(-0.4, 0.9)};
  for (int ell : {3, 5}) {
    const auto roots = fiber_parameters(ell, chi);
    REQUIRE(roots.size() == static_cast<std::size_t>(ell));
    for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i - 1].real() <= roots[i].real());
    for (int b = 0; b < ell; ++b) {
      // product of E and F around the cycle reproduces x y
      const auto rep = build_cyclic_rep(ell, chi, b);
      const MatrixXcd fe = rep.F * rep.E;
      Complex prod = 1;
      for (int j = 0; j < ell; ++j) prod *= fe(j, j);
      CHECK(std::abs(prod - chi.x * chi.y) < 1e-9);
    }
  }
}

TEST_CASE("y = 0 and x = 0 characters") {
  const auto a = build_cyclic_rep(5, CentralCharZ0{Complex(1.5, 0), Complex(0.9, 0.1), 0}, 2);
  CHECK(std::abs(rep_character(a).chi.y) < 1e-9);
  const auto b = build_cyclic_rep(5, CentralCharZ0{0, Complex(0.9, 0.1), Complex(0, 1.2)}, 1);
  CHECK(std::abs(rep_character(b).chi.x) < 1e-9);
  CHECK_THROWS_AS(build_cyclic_rep(5, CentralCharZ0{0, 1.1, 0}, 0), Error);
  try {
    build_cyclic_rep(3, CentralCharZ0{0, 2, 0}, 0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedCharacter);
  }
  CHECK_THROWS_AS(build_cyclic_rep(3, CentralCharZ0{1, 1, 1}, 3), Error);
  CHECK_THROWS_AS(build_cyclic_rep(4, CentralCharZ0{1, 1, 1}, 0), Error);
}

TEST_CASE("construction is deterministic and json round-trips") {
  const auto chi = random_generic_char(5, 17u);
  const auto r1 = build_cyclic_rep(5, chi, 3), r2 = build_cyclic_rep(5, chi, 3);
  CHECK(r1.E == r2.E);
  CHECK(r1.F == r2.F);
  CHECK(r1.K == r2.K);
  const json j = r1.to_json();
  CHECK(j.at("schema") == "chtrace/1");
  CHECK(distance(char_from_json(j.at("chi")), chi) == 0.0);
  CHECK(j.at("E").size() == 5);
}

TEST_CASE("characters are invariant under change of basis") {
  const auto rep = build_cyclic_rep(5, random_generic_char(5, 8u), 1);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  MatrixXcd g(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) g(i, j) = Complex(nd(rng), nd(rng));
  const auto act = rep.action().conjugated(g);
  const auto ch = rep_character(5, act.get("E"), act.get("F"), act.get("K"));
  CHECK(distance(ch.chi, rep.chi) < 1e-8);
  CHECK(std::abs(ch.casimir - rep.casimir_value) < 1e-8);
}

TEST_CASE("highest-weight modules") {
  for (int ell : {3, 5, 7}) {
    const Complex e = eps_c(ell);
    std::vector<Complex> values;
    for (int k = 0; k < ell; ++k) {
      const auto rep = build_highest_weight_rep(ell, k);
      CHECK(relation_residuals(ell, rep.E, rep.F, rep.K).max() < 1e-10);
      CHECK(rep.E.col(0).norm() == 0.0);
      CHECK(rep.F.col(ell - 1).norm() == 0.0);
      const auto ch = rep_character(rep);
      CHECK(std::abs(ch.chi.x) < 1e-12);
      CHECK(std::abs(ch.chi.y) < 1e-12);
      CHECK(std::abs(ch.chi.z - 1.0) < 1e-9);
      const Complex expect = (std::pow(e, k + 1) + std::pow(e, -k - 1)) / std::pow(e - 1.0 / e, 2);
      CHECK(std::abs(ch.casimir - expect) < 1e-9);
      values.push_back(ch.casimir);
    }
    // eps^{k+1} + eps^{-k-1} takes (ell+1)/2 distinct values; k and ell-2-k collide
    for (int k = 0; k < ell; ++k)
      for (int j = k + 1; j < ell; ++j) {
        const bool same = (k + j + 2) % ell == 0;
        CHECK((std::abs(values[k] - values[j]) < 1e-9) == same);
      }
  }
}

TEST_CASE("tensor products multiply characters") {
  for (int ell : {3, 5}) {
    const auto c1 = random_generic_char(ell, 1u), c2 = random_generic_char(ell, 2u);
    const auto a = build_cyclic_rep(ell, c1, 0), b = build_cyclic_rep(ell, c2, 1);
    const auto act = tensor_action(a, b);
    CHECK(act.dim == static_cast<std::size_t>(ell * ell));
    CHECK(relation_residuals(ell, act.get("E"), act.get("F"), act.get("K")).max() < 1e-10);
    const auto chi = central_character(ell, act.get("E"), act.get("F"), act.get("K"));
    const CentralCharZ0 expect{c1.x + c1.z * c2.x, c1.z * c2.z, c1.y / c2.z + c2.y};
    CHECK(distance(chi, expect) < 1e-8);
    CHECK_THROWS_AS(rep_character(ell, act.get("E"), act.get("F"), act.get("K")), Error);
    CHECK(rel_diff(act.get("K") * act.get("Kinv"), MatrixXcd::Identity(ell * ell, ell * ell)) < 1e-12);
  }
}

TEST_CASE("Borel restriction keeps E and K") {
  const auto rep = build_cyclic_rep(3, CentralCharZ0{1, 1, 1}, 0);
  const auto act = borel_restriction(rep);
  CHECK(act.algebra == ActingAlgebra::Borel);
  CHECK(act.get("E") == rep.E);
  CHECK(act.get("K") == rep.K);
  CHECK_FALSE(act.has("F"));
  CHECK_THROWS_AS(act.get("F"), Error);
}

TEST_CASE("direct powers and kron") {
  const auto rep = build_cyclic_rep(3, CentralCharZ0{1, 1, 1}, 0);
  const auto act = rep.action().direct_power(2);
  CHECK(act.dim == 6);
  CHECK(act.get("E").block(3, 3, 3, 3) == rep.E);
  CHECK(act.get("E").block(0, 3, 3, 3).norm() == 0.0);
  MatrixXcd a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const MatrixXcd k = kron(a, b);
  CHECK(k(0, 1) == Complex(1));
  CHECK(k(3, 2) == Complex(4));
  CHECK(k(1, 2) == Complex(2));
}

TEST_CASE("many random builds succeed") {
  std::mt19937_64 rng(2024);
  int built = 0;
  for (int t = 0; t < 1000; ++t) {
    const int ell = 3 + 2 * (t % 3);
    const auto chi = random_generic_char(ell, rng);
    const auto rep = build_cyclic_rep(ell, chi, t % ell);
    built += relation_residuals(ell, rep.E, rep.F, rep.K).max() < 1e-9;
  }
  CHECK(built == 1000);
}
