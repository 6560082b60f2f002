#include "chtrace/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "chtrace/errors.hpp"

namespace chtrace {

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = Scalar::one(f);
  return v;
}

void axpy(const Scalar& a, const Vec& x, Vec& y) {
  require(x.size() == y.size(), ErrorKind::InvalidParameter, "axpy length mismatch");
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) y[i] += a * x[i];
  }
}

Vec scaled(const Scalar& a, Vec x) {
  for (auto& v : x) v *= a;
  return x;
}

Vec add(Vec x, const Vec& y) {
  require(x.size() == y.size(), ErrorKind::InvalidParameter, "vector length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return x;
}

Vec sub(Vec x, const Vec& y) {
  require(x.size() == y.size(), ErrorKind::InvalidParameter, "vector length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  return x;
}

bool is_zero(const Vec& v, double tol) {
  return std::all_of(v.begin(), v.end(), [tol](const Scalar& s) { return s.is_zero(tol); });
}

Vec promote(const Vec& v, const Field& f) {
  Vec r;
  r.reserve(v.size());
  for (const auto& s : v) r.push_back(s.promote(f));
  return r;
}

// ---------------------------------------------------------------- Mat

Mat::Mat(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Mat::Mat(Field f, std::size_t rows, std::size_t cols, std::vector<Scalar> data)
    : field_(f), rows_(rows), cols_(cols), data_(std::move(data)) {
  require(data_.size() == rows * cols, ErrorKind::InvalidParameter, "matrix data size mismatch");
}

Mat Mat::identity(const Field& f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Mat Mat::from_rows(const Field& f, const std::vector<Vec>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  Mat m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == c, ErrorKind::InvalidParameter, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::from_complex(const Eigen::MatrixXcd& m) {
  Mat r(Field::complex(), static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Scalar(m(i, j));
  return r;
}

Vec Mat::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Mat::col(std::size_t j) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

void Mat::check_shape(const Mat& o, const char* op) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::InvalidParameter,
          std::string("matrix shape mismatch in ") + op);
}

Mat Mat::operator*(const Mat& o) const {
  require(cols_ == o.rows_, ErrorKind::InvalidParameter, "matrix product shape mismatch");
  Mat r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  }
  return r;
}

Vec Mat::operator*(const Vec& v) const {
  require(v.size() == cols_, ErrorKind::InvalidParameter, "matrix-vector shape mismatch");
  Vec r = zero_vec(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  check_shape(o, "add");
  Mat r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_shape(o, "sub");
  Mat r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Mat Mat::scaled(const Scalar& s) const {
  Mat r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

Mat Mat::transpose() const {
  Mat r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Scalar Mat::trace() const {
  require(square(), ErrorKind::InvalidParameter, "trace of a non-square matrix");
  Scalar t = Scalar::zero(field_);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool Mat::is_zero(double tol) const {
  return std::all_of(data_.begin(), data_.end(), [tol](const Scalar& s) { return s.is_zero(tol); });
}

double Mat::max_abs() const {
  double m = 0.0;
  for (const auto& s : data_) m = std::max(m, s.magnitude());
  return m;
}

Mat Mat::promote(const Field& f) const {
  Mat r(f, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].promote(f);
  return r;
}

Eigen::MatrixXcd Mat::to_complex() const {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).embed();
  return m;
}

// ---------------------------------------------------------------- elimination

Echelon rref(Mat m, double tol) {
  const bool exact = m.field().exact();
  const double thresh = exact ? 0.0 : tol * std::max(1.0, m.max_abs());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = m.rows();
    double best_mag = thresh;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (exact) {
        if (!m(i, c).is_zero()) {
          best = i;
          break;
        }
      } else if (m(i, c).magnitude() > best_mag) {
        best = i;
        best_mag = m(i, c).magnitude();
      }
    }
    if (best == m.rows()) {
      if (!exact)
        for (std::size_t i = r; i < m.rows(); ++i) m(i, c) = Scalar::zero(m.field());
      continue;
    }
    if (best != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
    const Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      m(i, c) = Scalar::zero(m.field());
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Mat& m, double tol) { return rref(m, tol).pivots.size(); }

std::vector<Vec> nullspace(const Mat& m, double tol) {
  const Echelon e = rref(m, tol);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(m.field(), m.cols());
    v[free] = Scalar::one(m.field());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Scalar determinant(const Mat& m) {
  require(m.square(), ErrorKind::InvalidParameter, "determinant of a non-square matrix");
  Mat a = m;
  const std::size_t n = a.rows();
  Scalar det = Scalar::one(a.field());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    double best = 0.0;
    for (std::size_t i = c; i < n; ++i) {
      if (a.field().exact()) {
        if (!a(i, c).is_zero()) {
          piv = i;
          break;
        }
      } else if (a(i, c).magnitude() > best) {
        best = a(i, c).magnitude();
        piv = i;
      }
    }
    if (piv == n || a(piv, c).is_zero()) return Scalar::zero(a.field());
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    const Scalar inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const Scalar f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Mat inverse(const Mat& m, double tol) {
  require(m.square(), ErrorKind::InvalidParameter, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  const Echelon e = rref(aug, tol);
  require(e.pivots.size() >= n && e.pivots[n - 1] == n - 1, ErrorKind::InvalidParameter,
          "matrix is singular");
  Mat inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::optional<Vec> solve(const Mat& m, const Vec& b, double tol) {
  require(b.size() == m.rows(), ErrorKind::InvalidParameter, "solve: rhs length mismatch");
  Mat aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Echelon e = rref(aug, tol);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vec x = zero_vec(m.field(), m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

// ---------------------------------------------------------------- SpanBuilder

SpanBuilder::SpanBuilder(Field f, std::size_t ambient_dim, double tol)
    : field_(f), ambient_(ambient_dim), tol_(tol) {}

std::pair<Vec, Vec> SpanBuilder::reduce(const Vec& v) const {
  require(v.size() == ambient_, ErrorKind::InvalidParameter, "span: vector length mismatch");
  Vec res = v;
  Vec mult = zero_vec(field_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = res[piv_[i]];
    if (c.is_zero()) continue;
    mult[i] = c;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!rows_[i][j].is_zero()) res[j] -= c * rows_[i][j];
    res[piv_[i]] = Scalar::zero(field_);
  }
  return {std::move(res), std::move(mult)};
}

bool SpanBuilder::add(const Vec& v) {
  auto [res, mult] = reduce(v);
  std::size_t piv = ambient_;
  if (field_.exact()) {
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!res[j].is_zero()) {
        piv = j;
        break;
      }
  } else {
    double vmax = 0.0;
    for (const auto& s : v) vmax = std::max(vmax, s.magnitude());
    double best = tol_ * vmax;
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (res[j].magnitude() > best) {
        best = res[j].magnitude();
        piv = j;
      }
    }
  }
  if (piv == ambient_) return false;

  const Scalar inv = res[piv].inverse();
  for (auto& s : res) s *= inv;
  res[piv] = Scalar::one(field_);
  const std::size_t k = basis_.size();
  for (auto& c : combo_) c.push_back(Scalar::zero(field_));
  Vec combo = zero_vec(field_, k + 1);
  combo[k] = Scalar::one(field_);
  for (std::size_t i = 0; i < rows_.size(); ++i) axpy(-mult[i], combo_[i], combo);
  for (auto& s : combo) s *= inv;

  basis_.push_back(v);
  rows_.push_back(std::move(res));
  piv_.push_back(piv);
  combo_.push_back(std::move(combo));
  return true;
}

bool SpanBuilder::contains(const Vec& v) const { return coordinates(v).has_value(); }

std::optional<Vec> SpanBuilder::coordinates(const Vec& v) const {
  auto [res, mult] = reduce(v);
  double vmax = 0.0;
  if (!field_.exact())
    for (const auto& s : v) vmax = std::max(vmax, s.magnitude());
  if (!is_zero(res, field_.exact() ? 0.0 : tol_ * std::max(vmax, 1e-300))) return std::nullopt;
  Vec coords = zero_vec(field_, basis_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) axpy(mult[i], combo_[i], coords);
  return coords;
}

}  // namespace chtrace
