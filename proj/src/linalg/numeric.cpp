#include "chtrace/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace chtrace::numeric {

MatrixXcd kernel(const MatrixXcd& m, double tol) {
  const Eigen::Index n = m.cols();
  if (n == 0) return MatrixXcd(0, 0);
  if (m.rows() == 0) return MatrixXcd::Identity(n, n);
  Eigen::BDCSVD<MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double thresh = tol * std::max(1.0, smax);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

double relative_min_singular_value(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) / std::max(1.0, s(0));
}

MatrixXcd orthogonal_complement(const MatrixXcd& cols, Eigen::Index ambient_dim) {
  if (cols.cols() == 0) return MatrixXcd::Identity(ambient_dim, ambient_dim);
  Eigen::HouseholderQR<MatrixXcd> qr(cols);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(ambient_dim, ambient_dim);
  return q.rightCols(ambient_dim - cols.cols());
}

std::vector<std::vector<Eigen::Index>> cluster_values(const VectorXcd& values, double tol) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(values(i) - values(j)) <= tol) parent[static_cast<std::size_t>(find(i))] = find(j);

  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index r = find(i);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<Eigen::Index>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(i);
  }
  auto key = [&](const std::vector<Eigen::Index>& g) {
    cplx best = values(g.front());
    for (auto i : g) {
      const cplx v = values(i);
      if (v.real() < best.real() || (v.real() == best.real() && v.imag() < best.imag())) best = v;
    }
    return best;
  };
  std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
    const cplx ka = key(a), kb = key(b);
    return ka.real() < kb.real() || (ka.real() == kb.real() && ka.imag() < kb.imag());
  });
  return groups;
}

double min_intercluster_gap(const VectorXcd& values,
                            const std::vector<std::vector<Eigen::Index>>& clusters) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < clusters.size(); ++a)
    for (std::size_t b = a + 1; b < clusters.size(); ++b)
      for (auto i : clusters[a])
        for (auto j : clusters[b]) gap = std::min(gap, std::abs(values(i) - values(j)));
  return gap;
}

cplx uniform_square(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  const double im = u(rng);
  return {re, im};
}

bool scalar_value(const MatrixXcd& m, double tol, cplx& out) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) return false;
  out = m.trace() / static_cast<double>(n);
  const double dev = (m - out * MatrixXcd::Identity(n, n)).norm();
  return dev <= tol * std::max(1.0, m.norm());
}

int commutant_dimension(const std::vector<MatrixXcd>& gens, double tol) {
  if (gens.empty()) return 0;
  const Eigen::Index n = gens.front().rows();
  const Eigen::Index nn = n * n;
  // vec(XG - GX) = (G^T (x) I - I (x) G) vec(X), column-major vec.
  MatrixXcd sys(nn * static_cast<Eigen::Index>(gens.size()), nn);
  const MatrixXcd id = MatrixXcd::Identity(n, n);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const MatrixXcd& G = gens[g];
    const Eigen::Index off = static_cast<Eigen::Index>(g) * nn;
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        // block (a,b) of G^T (x) I is G(b,a) I; of I (x) G is delta_ab G
        sys.block(off + a * n, b * n, n, n) = G(b, a) * id;
        if (a == b) sys.block(off + a * n, b * n, n, n) -= G;
      }
  }
  return static_cast<int>(kernel(sys, tol).cols());
}

MatrixXcd matrix_power(const MatrixXcd& m, long e) {
  MatrixXcd result = MatrixXcd::Identity(m.rows(), m.cols());
  MatrixXcd base = m;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

long exact_sqrt(long n) {
  if (n < 0) return -1;
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

}  // namespace chtrace::numeric
