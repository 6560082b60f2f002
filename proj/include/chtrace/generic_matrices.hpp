#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "chtrace/linalg.hpp"
#include "chtrace/scalar_json.hpp"
#include "chtrace/trace_algebra.hpp"

namespace chtrace {

// ------------------------------------------------------------ tuples

/// m square matrices of one size over one field.
struct MatrixTuple {
  std::vector<Mat> mats;

  MatrixTuple() = default;
  explicit MatrixTuple(std::vector<Mat> m);  // validates shape and field

  std::size_t size() const noexcept { return mats.size(); }
  std::size_t n() const { return mats.front().rows(); }
  const Field& field() const { return mats.front().field(); }
  const Mat& operator[](std::size_t i) const { return mats[i]; }

  /// g x_i g^{-1} for each entry.
  MatrixTuple conjugated(const Mat& g) const;
};

Mat mat_from_json(const json& j, const Field& f);
json mat_to_json(const Mat& m);
/// JSON array of row-major matrices.
MatrixTuple tuple_from_json(const json& j, const Field& f);

/// n x n matrix with entries num/den, num in [-9, 9], den in [1, 4].
Mat random_rational_matrix(std::size_t n, std::mt19937_64& rng);

// ------------------------------------------------------------ expressions

/// Expression in the free algebra with trace. Node kinds:
///   x<i>          variable (1-based)
///   <p/q>         scalar constant
///   (mul a b ...) product
///   (add a b ...) sum
///   (sub a b)     difference
///   (tr a)        trace, a scalar factor
///   (eij i j)     constant matrix unit, not a trace expression
class TraceExpr {
 public:
  enum class Kind { Var, Const, Mul, Add, Sub, Tr, Eij };

  static TraceExpr parse(const std::string& text);
  static TraceExpr var(int index);
  static TraceExpr constant(Rational c);
  static TraceExpr node(Kind kind, std::vector<TraceExpr> children);
  static TraceExpr unit(int i, int j);

  Kind kind() const noexcept { return kind_; }
  /// Variable index, or the row of a matrix unit.
  int index() const noexcept { return index_; }
  int col() const noexcept { return col_; }
  const Rational& value() const noexcept { return value_; }
  const std::vector<TraceExpr>& children() const noexcept { return children_; }
  std::string to_string() const;
  /// Largest variable index used, 0 if none.
  int max_variable() const;

 private:
  Kind kind_ = Kind::Const;
  int index_ = 0, col_ = 0;
  Rational value_;
  std::vector<TraceExpr> children_;
};

/// Either a field scalar (closed under trace) or a matrix.
struct ExprValue {
  bool is_scalar = true;
  Scalar scalar;
  Mat matrix;

  /// Scalars become scalar multiples of the n x n identity.
  Mat as_matrix(std::size_t n) const;
};

ExprValue eval(const TraceExpr& e, const MatrixTuple& tuple);

// ------------------------------------------------------------ permutations

/// Permutation of {1..N} kept in cycle notation; the cycle through N is
/// singled out because it becomes the open product in phi_sigma.
class CyclePermutation {
 public:
  /// images[i-1] = sigma(i), a permutation of 1..N.
  static CyclePermutation from_images(std::vector<int> images);
  /// Disjoint cycles on 1..N; omitted points are fixed.
  static CyclePermutation from_cycles(int N, const std::vector<std::vector<int>>& cycles);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  int sign() const;
  /// Cycles not containing N, each starting at its smallest point.
  const std::vector<std::vector<int>>& closed_cycles() const noexcept { return closed_; }
  /// sigma(N), sigma^2(N), ... up to but excluding N.
  const std::vector<int>& open_word() const noexcept { return open_; }
  std::string to_string() const;

 private:
  std::vector<int> images_;
  std::vector<std::vector<int>> closed_;
  std::vector<int> open_;
};

/// t(closed cycle words) ... times the ordered product of the open word.
Mat phi_sigma(const CyclePermutation& sigma, const MatrixTuple& xs);

/// (-1)^n sum over S_{n+1} of sgn(sigma) phi_sigma(x_1..x_n). Requires 1 <= n <= 6.
Mat ch_multilinear(int n, const MatrixTuple& xs);

// ------------------------------------------------------------ semisimplicity

/// Basis of the unital algebra generated by the tuple.
std::vector<Mat> generated_algebra_basis(const MatrixTuple& xs, double tol = kDefaultRankTol);
/// The same algebra with matrix trace and ch_degree = n.
FiniteTraceAlgebra generated_algebra(const MatrixTuple& xs, double tol = kDefaultRankTol);

bool artin_semisimple(const MatrixTuple& xs);

/// Largest |det(tr(u_i u_j))| over `trials` random n^2-tuples from the
/// generated algebra; zero whenever that algebra is smaller than M_n.
Scalar discriminant_probe(const MatrixTuple& xs, int trials, std::uint64_t seed);

/// f(g x g^{-1}) == g f(x) g^{-1}; throws invalid-parameter for singular g.
bool equivariance_check(const TraceExpr& e, const MatrixTuple& xs, const Mat& g, double tol = kCheckTol);

// ------------------------------------------------------------ batch check

struct ChCheckReport {
  int trials = 0;
  int vanished = 0;
  int first_failure = -1;  // trial index of the first nonzero evaluation
};

/// Evaluates ch_multilinear(n, .) on `trials` random rational tuples of
/// size x size matrices. Trial t uses seed + t.
ChCheckReport ch_multilinear_trials(int n, std::size_t size, int trials, std::uint64_t seed, int jobs = 1);

}  // namespace chtrace
