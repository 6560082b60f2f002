#include <algorithm>
#include <numeric>
#include <random>

#include "algebra_oracles.hpp"
#include "chtrace/algebra_json.hpp"
#include "chtrace/errors.hpp"
#include "chtrace/trace_algebra.hpp"
#include "doctest.h"

using namespace chtrace;
using chtrace::testing::nilradical_scan;
using chtrace::testing::same_span;

namespace {

Scalar q(long n, long d = 1) { return Scalar(Rational(n, d)); }

Vec qv(std::vector<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(q(x));
  return v;
}

// Polynomials with rational coefficients, lowest degree first.
using Poly = std::vector<Rational>;

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

Poly padd(Poly a, const Poly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
  return a;
}

// det(tI - M) by the Leibniz expansion.
Poly char_poly_leibniz(const Mat& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly total{Rational(0)};
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Poly term{Rational(inversions % 2 ? -1 : 1)};
    for (std::size_t i = 0; i < n; ++i) {
      Poly entry{-m(i, perm[i]).rat()};
      if (perm[i] == i) entry.push_back(Rational(1));
      term = pmul(term, entry);
    }
    total = padd(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Mat random_rational_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 3);
  Mat m(Field::rationals(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(Rational(num(rng), den(rng)));
  return m;
}

FiniteTraceAlgebra q_plus_q(long t1, long t2) {
  return direct_sum(matrix_algebra(1), matrix_algebra(1)).with_trace(qv({t1, t2}), static_cast<int>(t1 + t2));
}

}  // namespace

TEST_CASE("axioms of standard algebras") {
  CHECK(check_axioms(matrix_algebra(2)).ok());
  CHECK(check_axioms(cyclic_group_algebra(3)).ok());
  CHECK(check_axioms(upper_triangular(3)).ok());
  CHECK(check_axioms(truncated_polynomial(4)).ok());
}

TEST_CASE("trace symmetry failure carries a witness") {
  const auto m2 = matrix_algebra(2);
  // labels e11 e12 e21 e22; e12 e21 = e11, e21 e12 = e22
  const auto bad = m2.with_trace(qv({1, 0, 0, 2}), 3);
  const auto rep = check_axioms(bad);
  CHECK_FALSE(rep.ok());
  const auto* sym = rep.find(kAxTraceSymmetry);
  REQUIRE(sym != nullptr);
  CHECK_FALSE(sym->passed);
  CHECK(sym->witness == "(e12, e21)");
  CHECK(rep.find(kAxAssociativity)->passed);
}

TEST_CASE("trace of unit must equal n") {
  const auto m2 = matrix_algebra(2);
  const auto wrong = m2.with_trace(m2.trace_vec(), 3);
  CHECK_FALSE(check_axioms(wrong).find(kAxTraceOfUnit)->passed);
  CHECK_FALSE(ch_check(wrong, 4, 1));
}

TEST_CASE("regular trace of the cyclic group algebra") {
  // oracle: the trace of g^i acting on Q[Z/3] by left multiplication
  const auto a = cyclic_group_algebra(3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.trace_vec()[i] == a.left_multiplication(a.basis_vector(i)).trace());
}

TEST_CASE("char_poly_coeffs small cases") {
  const auto p = char_poly_coeffs({q(3), q(3), q(3)}, 3);
  CHECK(p == std::vector<Scalar>{q(-3), q(3), q(-1)});
  CHECK(char_poly_coeffs({q(5, 7)}, 1) == std::vector<Scalar>{q(-5, 7)});
  CHECK_THROWS_AS(char_poly_coeffs({}, 0), Error);
}

TEST_CASE("char_poly_coeffs agrees with det(tI - M)") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 6; ++n) {
    const int reps = n == 2 ? 20 : 4;
    for (int r = 0; r < reps; ++r) {
      const Mat m = random_rational_matrix(n, rng);
      std::vector<Scalar> traces;
      Mat pw = m;
      for (std::size_t i = 0; i < n; ++i) {
        traces.push_back(pw.trace());
        pw = pw * m;
      }
      const auto coeffs = char_poly_coeffs(traces, static_cast<int>(n));
      const Poly oracle = char_poly_leibniz(m);
      REQUIRE(oracle.size() == n + 1);
      for (std::size_t i = 1; i <= n; ++i) CHECK(coeffs[i - 1] == Scalar(oracle[n - i]));
    }
  }
}

TEST_CASE("ch_defect examples") {
  const auto m2 = matrix_algebra(2);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> u(-9, 9);
  for (int t = 0; t < 10; ++t) {
    Vec x = m2.zero();
    for (auto& c : x) c = q(u(rng));
    CHECK(is_zero(ch_defect(m2, x)));
  }
  // Q[x]/(x^3) with t(1) = 2: chi_x(t) = t^2, so the defect at x is x^2
  const auto trunc = truncated_polynomial(3).with_trace(qv({2, 0, 0}), 2);
  CHECK(ch_defect(trunc, qv({0, 1, 0})) == qv({0, 0, 1}));
  CHECK(is_zero(ch_defect(q_plus_q(1, 1), qv({1, 0}))));
}

TEST_CASE("ch_check examples") {
  CHECK(ch_check(matrix_algebra(3), 8, 1));
  CHECK(ch_check(rescale_trace(matrix_algebra(2), 2), 8, 1));
  CHECK(ch_check(cyclic_group_algebra(4), 8, 2));
  CHECK_FALSE(ch_check(truncated_polynomial(3).with_trace(qv({2, 0, 0}), 2), 8, 1));
  CHECK(ch_check(matrix_algebra(2, Field::complex()), 8, 3));
  CHECK(ch_check(matrix_algebra(2, Field::cyclotomic(5)), 4, 3));
}

TEST_CASE("constructions preserve the CH identity") {
  const auto a = matrix_algebra(2), b = truncated_polynomial(2);
  CHECK(ch_check(direct_sum(a, b), 4, 9));
  CHECK(ch_check(tensor_product(a, b), 4, 9));
  CHECK(ch_check(tensor_product(cyclic_group_algebra(2), a), 4, 9));
  CHECK(ch_check(rescale_trace(b, 3), 4, 9));
  CHECK_THROWS_AS(direct_sum(a, matrix_algebra(2, Field::complex())), Error);
  CHECK_THROWS_AS(rescale_trace(a, 0), Error);
}

TEST_CASE("radical examples") {
  const auto r1 = radical(truncated_polynomial(2));
  REQUIRE(r1.size() == 1);
  CHECK(same_span(Field::rationals(), 2, r1, {qv({0, 1})}));
  CHECK(radical(matrix_algebra(2)).empty());
  const auto sum = direct_sum(matrix_algebra(1), truncated_polynomial(2));
  CHECK(same_span(Field::rationals(), 3, radical(sum), {qv({0, 0, 1})}));
  CHECK_THROWS_AS(radical(matrix_algebra(2).with_trace(qv({1, 0, 0, 2}), 3)), Error);
}

TEST_CASE("radical matches the brute-force nilradical") {
  for (const auto& [name, a] : chtrace::testing::radical_corpus()) {
    CAPTURE(name);
    CHECK(same_span(a.field(), a.dim(), radical(a), nilradical_scan(a)));
  }
  const auto t3 = upper_triangular(3);
  CHECK(same_span(t3.field(), t3.dim(), radical(t3), nilradical_scan(t3)));
}

TEST_CASE("radical elements are nilpotent of order n") {
  for (const auto& [name, a] : chtrace::testing::radical_corpus()) {
    CAPTURE(name);
    for (const auto& x : radical(a)) CHECK(is_zero(a.power(x, a.ch_degree())));
  }
}

TEST_CASE("radical of a direct sum") {
  const auto a = truncated_polynomial(3), b = upper_triangular(2);
  const auto s = direct_sum(a, b);
  std::vector<Vec> expected;
  for (auto x : radical(a)) {
    x.resize(s.dim(), q(0));
    expected.push_back(x);
  }
  for (const auto& y : radical(b)) {
    Vec x = zero_vec(Field::rationals(), a.dim());
    x.insert(x.end(), y.begin(), y.end());
    expected.push_back(x);
  }
  CHECK(same_span(s.field(), s.dim(), radical(s), expected));
}

TEST_CASE("block spectra") {
  const auto q_m2 = direct_sum(rescale_trace(matrix_algebra(1), 2), matrix_algebra(2));
  CHECK(block_decompose(q_m2) == BlockSpectrum{{{1, 2}, {2, 1}}});
  CHECK(block_decompose(rescale_trace(matrix_algebra(2), 3)) == BlockSpectrum{{{2, 3}}});
  CHECK(block_decompose(cyclic_group_algebra(3)) == BlockSpectrum{{{1, 1}, {1, 1}, {1, 1}}});
  CHECK(block_decompose(rescale_trace(matrix_algebra(2), 2)) == BlockSpectrum{{{2, 2}}});
  CHECK(block_decompose(direct_sum(matrix_algebra(1), matrix_algebra(2))) == BlockSpectrum{{{1, 1}, {2, 1}}});
  CHECK(block_decompose(tensor_product(matrix_algebra(2), matrix_algebra(2))) == BlockSpectrum{{{4, 1}}});
  CHECK(block_decompose(upper_triangular(3)) == BlockSpectrum{{{1, 1}, {1, 1}, {1, 1}}});
  CHECK(block_decompose(truncated_polynomial(3)) == BlockSpectrum{{{1, 3}}});
  CHECK(block_decompose(q_m2).to_string() == "{(1,2),(2,1)}");
}

TEST_CASE("cyclic group algebra splits by the discrete Fourier transform") {
  // oracle: f_k = (1/3) sum_j w^{-jk} g^j are orthogonal idempotents with t(f_k) = 1
  const auto a = cyclic_group_algebra(3, Field::cyclotomic(3));
  for (int k = 0; k < 3; ++k) {
    Vec f = a.zero();
    for (int j = 0; j < 3; ++j)
      f[static_cast<std::size_t>(j)] = Scalar(CycloNum::root_power(3, -j * k)) / Scalar::from_rational(a.field(), Rational(3));
    CHECK(a.multiply(f, f) == f);
    CHECK(a.trace(f).is_one());
  }
  CHECK(block_decompose(a).blocks.size() == 3);
}

TEST_CASE("tensor of matrix algebras is the Kronecker product") {
  // oracle: e_ij (x) e_kl -> E_{(i,k),(j,l)} is a trace-preserving algebra map onto M_4
  const auto t = tensor_product(matrix_algebra(2), matrix_algebra(2));
  std::vector<Mat> images;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
          Mat e(Field::rationals(), 4, 4);
          e(2 * i + k, 2 * j + l) = q(1);
          images.push_back(e);
        }
  for (std::size_t x = 0; x < 16; ++x) {
    CHECK(t.trace_vec()[x] == images[x].trace());
    for (std::size_t y = 0; y < 16; ++y) {
      const Vec prod = t.multiply(t.basis_vector(x), t.basis_vector(y));
      Mat img(Field::rationals(), 4, 4);
      for (std::size_t z = 0; z < 16; ++z) img = img + images[z].scaled(prod[z]);
      CHECK(img == images[x] * images[y]);
    }
  }
}

TEST_CASE("rescaling multiplies every multiplicity") {
  const auto base = direct_sum(matrix_algebra(1), direct_sum(matrix_algebra(2), truncated_polynomial(2)));
  const auto spec = block_decompose(base);
  for (int r = 2; r <= 4; ++r) {
    auto expected = spec;
    for (auto& b : expected.blocks) b.h *= r;
    CHECK(block_decompose(rescale_trace(base, r)) == expected);
  }
}

TEST_CASE("incompatible trace fails to decompose") {
  // t = (1/2, 3/2) on Q + Q has t(1) = 2 but non-integral block weights
  const auto a = direct_sum(matrix_algebra(1), matrix_algebra(1)).with_trace({q(1, 2), q(3, 2)}, 2);
  CHECK_THROWS_AS(block_decompose(a), Error);
}

TEST_CASE("reduced trace") {
  const auto m2x3 = rescale_trace(matrix_algebra(2), 3);
  const auto r = reduced_trace(m2x3);
  CHECK(r.multiple == 3);
  CHECK(r.trace == matrix_algebra(2).trace_vec());

  const auto qq = reduced_trace(q_plus_q(2, 2));
  CHECK(qq.multiple == 2);
  CHECK(qq.trace == qv({1, 1}));

  // regular trace a -> tr(a^L) on M_2, from the left multiplication matrices
  const auto m2 = matrix_algebra(2);
  Vec regular;
  for (std::size_t i = 0; i < 4; ++i) regular.push_back(m2.left_multiplication(m2.basis_vector(i)).trace());
  const auto reg = reduced_trace(m2.with_trace(regular, 4));
  CHECK(reg.multiple == 2);
  CHECK(reg.trace == m2.trace_vec());

  CHECK_THROWS_AS(reduced_trace(truncated_polynomial(2)), Error);
}

TEST_CASE("reduced trace with unequal multiplicities") {
  const auto a = direct_sum(rescale_trace(matrix_algebra(1), 2), matrix_algebra(2));
  const auto r = reduced_trace(a);
  CHECK_FALSE(r.multiple.has_value());
  const Vec expected = qv({1, 1, 0, 0, 1});
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(r.trace[i].c64() - expected[i].embed()) < 1e-9);
}

TEST_CASE("reduced trace gram is nondegenerate") {
  for (const auto& a : {matrix_algebra(3), cyclic_group_algebra(4), rescale_trace(matrix_algebra(2), 2),
                        direct_sum(matrix_algebra(1), matrix_algebra(2))}) {
    const auto r = reduced_trace(a);
    REQUIRE(r.multiple.has_value());
    CHECK_FALSE(determinant(a.with_trace(r.trace, a.ch_degree() / *r.multiple).trace_form()).is_zero());
  }
}

TEST_CASE("algebra json round trip") {
  for (const auto& a : {matrix_algebra(2), cyclic_group_algebra(3, Field::cyclotomic(5)), upper_triangular(2, Field::complex())}) {
    const auto b = algebra_from_json(algebra_to_json(a));
    CHECK(b.field() == a.field());
    CHECK(b.labels() == a.labels());
    CHECK(b.unit() == a.unit());
    CHECK(b.trace_vec() == a.trace_vec());
    CHECK(b.ch_degree() == a.ch_degree());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        CHECK(b.multiply(b.basis_vector(i), b.basis_vector(j)) == a.multiply(a.basis_vector(i), a.basis_vector(j)));
  }
}

TEST_CASE("algebra json shorthand and errors") {
  const auto j = json::parse(R"({"dim":2,"field":"Q","unit":[1,0],"trace":[2,0],"ch_degree":2,
    "structure":[[0,0,0,1],[0,1,1,1],[1,0,1,"1"]]})");
  const auto a = algebra_from_json(j);
  CHECK(same_span(Field::rationals(), 2, radical(a), {qv({0, 1})}));
  CHECK_THROWS_AS(algebra_from_json(json::parse(R"({"dim":2})")), Error);
  CHECK_THROWS_AS(algebra_from_json(json::parse(R"({"dim":1,"unit":[1],"trace":[1],"ch_degree":1,"structure":[[0,0,3,1]]})")), Error);
}
