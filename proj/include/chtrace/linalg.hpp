#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "chtrace/scalar.hpp"

namespace chtrace {

using Vec = std::vector<Scalar>;

/// Default relative pivot tolerance for complex-tag elimination.
inline constexpr double kDefaultRankTol = 1e-9;

Vec zero_vec(const Field& f, std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
void axpy(const Scalar& a, const Vec& x, Vec& y);
Vec scaled(const Scalar& a, Vec x);
Vec add(Vec x, const Vec& y);
Vec sub(Vec x, const Vec& y);
bool is_zero(const Vec& v, double tol = 0.0);
Vec promote(const Vec& v, const Field& f);

/// Dense row-major matrix over a single field.
class Mat {
 public:
  Mat() = default;
  Mat(Field f, std::size_t rows, std::size_t cols);
  Mat(Field f, std::size_t rows, std::size_t cols, std::vector<Scalar> data);

  static Mat identity(const Field& f, std::size_t n);
  static Mat from_rows(const Field& f, const std::vector<Vec>& rows);
  static Mat from_complex(const Eigen::MatrixXcd& m);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& data() const noexcept { return data_; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;

  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Scalar& s) const;
  Mat transpose() const;
  Scalar trace() const;

  bool is_zero(double tol = 0.0) const;
  double max_abs() const;
  Mat promote(const Field& f) const;
  Eigen::MatrixXcd to_complex() const;

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_shape(const Mat& o, const char* op) const;

  Field field_{};
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

struct Echelon {
  Mat reduced;                      // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination. Exact for Q / Q(eps); for C64 uses partial
/// pivoting and treats |pivot| <= tol * max|entry| as zero.
Echelon rref(Mat m, double tol = kDefaultRankTol);
std::size_t rank(const Mat& m, double tol = kDefaultRankTol);
/// Basis of { x : m x = 0 } (one vector per free column).
std::vector<Vec> nullspace(const Mat& m, double tol = kDefaultRankTol);
Scalar determinant(const Mat& m);
/// Throws invalid-parameter when m is singular.
Mat inverse(const Mat& m, double tol = kDefaultRankTol);
/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Mat& m, const Vec& b, double tol = kDefaultRankTol);

/// Incrementally grown span with exact (or tolerance-based) membership and
/// coordinates relative to the vectors accepted so far.
class SpanBuilder {
 public:
  SpanBuilder(Field f, std::size_t ambient_dim, double tol = kDefaultRankTol);

  /// Adds v when it is independent of the current span; returns whether it was added.
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  /// Coordinates of v w.r.t. basis(), or nullopt when v is outside the span.
  std::optional<Vec> coordinates(const Vec& v) const;

  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  const std::vector<Vec>& basis() const noexcept { return basis_; }

 private:
  // Reduces v against the echelon rows; returns residual and the multipliers.
  std::pair<Vec, Vec> reduce(const Vec& v) const;

  Field field_;
  std::size_t ambient_;
  double tol_;
  std::vector<Vec> basis_;
  std::vector<Vec> rows_;        // echelon rows, pivot entry normalized to 1
  std::vector<std::size_t> piv_;
  std::vector<Vec> combo_;       // rows_[i] = sum_j combo_[i][j] * basis_[j]
};

}  // namespace chtrace
