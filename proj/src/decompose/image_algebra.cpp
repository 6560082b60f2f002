#include <Eigen/SparseCore>

#include <cmath>
#include <deque>

#include "chtrace/decompose.hpp"
#include "chtrace/errors.hpp"
#include "chtrace/kernels.hpp"
#include "chtrace/linalg.hpp"
#include "chtrace/numeric.hpp"

namespace chtrace {

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;

bool is_diagonal(const MatrixXcd& m) {
  const double off = (m - MatrixXcd(m.diagonal().asDiagonal())).norm();
  return off <= 1e-12 * std::max(1.0, m.norm());
}

// Class id of each matrix unit (p, q), from the clusters of k_p / k_q.
std::vector<int> weight_classes(const MatrixXcd& K, int& class_count) {
  const auto n = K.rows();
  const Eigen::VectorXcd diag = K.diagonal();
  const double scale = diag.cwiseAbs().maxCoeff();
  const auto clusters = numeric::cluster_values(diag, 1e-8 * std::max(1.0, scale));
  std::vector<int> cid(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (auto p : clusters[c]) cid[static_cast<std::size_t>(p)] = static_cast<int>(c);
  const auto C = static_cast<Eigen::Index>(clusters.size());
  Eigen::VectorXcd ratios(C * C);
  for (Eigen::Index a = 0; a < C; ++a)
    for (Eigen::Index b = 0; b < C; ++b) ratios(a * C + b) = diag(clusters[a].front()) / diag(clusters[b].front());
  const auto rclusters = numeric::cluster_values(ratios, 1e-8);
  std::vector<int> pair_class(static_cast<std::size_t>(C * C));
  for (std::size_t r = 0; r < rclusters.size(); ++r)
    for (auto i : rclusters[r]) pair_class[static_cast<std::size_t>(i)] = static_cast<int>(r);
  class_count = static_cast<int>(rclusters.size());
  std::vector<int> out(static_cast<std::size_t>(n * n));
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q)
      out[static_cast<std::size_t>(p * n + q)] =
          pair_class[static_cast<std::size_t>(cid[static_cast<std::size_t>(p)] * C + cid[static_cast<std::size_t>(q)])];
  return out;
}

// Class of a homogeneous matrix, or -1 when its entries span several classes.
int homogeneous_class(const MatrixXcd& m, const std::vector<int>& cls) {
  const auto n = m.rows();
  const double cut = 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
  int found = -2;
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) {
      if (std::abs(m(p, q)) <= cut) continue;
      const int c = cls[static_cast<std::size_t>(p * n + q)];
      if (found == -2) found = c;
      else if (found != c) return -1;
    }
  return found;
}

// Two passes of classical Gram-Schmidt; returns the residual norm.
double orthogonalize(Eigen::VectorXcd& v, const std::vector<Eigen::VectorXcd>& basis) {
  const auto n = static_cast<std::size_t>(v.size());
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) {
      const Complex c = kernels::dotc({b.data(), n}, {v.data(), n});
      kernels::axpy(-c, {b.data(), n}, {v.data(), n});
    }
  return std::sqrt(kernels::norm2({v.data(), n}));
}

}  // namespace

MatrixXcd ImageAlgebra::element(std::size_t i) const {
  const auto n = static_cast<Eigen::Index>(n_);
  for (const auto& wc : classes_) {
    if (i >= wc.elems.size()) {
      i -= wc.elems.size();
      continue;
    }
    MatrixXcd m = MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < wc.support.size(); ++k) {
      const auto f = static_cast<Eigen::Index>(wc.support[k]);
      m(f / n, f % n) = wc.elems[i](static_cast<Eigen::Index>(k));
    }
    return m;
  }
  fail(ErrorKind::InvalidParameter, "image algebra basis index out of range");
}

std::vector<MatrixXcd> ImageAlgebra::basis() const {
  std::vector<MatrixXcd> out;
  for (std::size_t i = 0; i < total_; ++i) out.push_back(element(i));
  return out;
}

double ImageAlgebra::gram_condition() const {
  const auto n = n_;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& wc : classes_) {
    const auto& pc = classes_[wc.partner];
    if (wc.elems.size() != pc.elems.size()) return 0.0;
    if (wc.elems.empty()) continue;
    // entry (p, q) of class m pairs with entry (q, p) of the partner class
    std::vector<std::size_t> tpos(wc.support.size());
    for (std::size_t k = 0; k < wc.support.size(); ++k) {
      const std::size_t f = wc.support[k];
      const int pos = pc.index_of[(f % n) * n + f / n];
      if (pos < 0) return 0.0;
      tpos[k] = static_cast<std::size_t>(pos);
    }
    const auto d = static_cast<Eigen::Index>(wc.elems.size());
    const auto len = wc.support.size();
    std::vector<Eigen::VectorXcd> permuted;
    for (const auto& b : pc.elems) {
      Eigen::VectorXcd t(static_cast<Eigen::Index>(len));
      for (std::size_t k = 0; k < len; ++k) t(static_cast<Eigen::Index>(k)) = b(static_cast<Eigen::Index>(tpos[k]));
      permuted.push_back(std::move(t));
    }
    MatrixXcd G(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        G(i, j) = kernels::dotu({wc.elems[static_cast<std::size_t>(i)].data(), len},
                                {permuted[static_cast<std::size_t>(j)].data(), len});
    Eigen::JacobiSVD<MatrixXcd> svd(G);
    const auto& s = svd.singularValues();
    const double ratio = s(0) > 0 ? s(s.size() - 1) / s(0) : 0.0;
    worst = std::min(worst, ratio);
  }
  return std::isfinite(worst) ? worst : 0.0;
}

std::vector<MatrixXcd> ImageAlgebra::center(double tol) const {
  // central elements commute with K, so only the neutral class can contribute
  std::vector<MatrixXcd> cand;
  std::size_t offset = 0;
  for (const auto& wc : classes_) {
    if (wc.neutral)
      for (std::size_t i = 0; i < wc.elems.size(); ++i) cand.push_back(element(offset + i));
    offset += wc.elems.size();
  }
  const auto nn = static_cast<Eigen::Index>(n_ * n_);
  const auto G = static_cast<Eigen::Index>(generators_.size());
  MatrixXcd sys(nn * G, static_cast<Eigen::Index>(cand.size()));
  for (std::size_t c = 0; c < cand.size(); ++c)
    for (Eigen::Index g = 0; g < G; ++g) {
      const MatrixXcd& gm = generators_[static_cast<std::size_t>(g)];
      const MatrixXcd comm = (cand[c] * gm - gm * cand[c]) / std::max(1.0, gm.norm());
      sys.block(g * nn, static_cast<Eigen::Index>(c), nn, 1) = comm.reshaped();
    }
  const MatrixXcd ker = numeric::kernel(sys, tol);
  std::vector<MatrixXcd> out;
  for (Eigen::Index k = 0; k < ker.cols(); ++k) {
    MatrixXcd z = MatrixXcd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (std::size_t c = 0; c < cand.size(); ++c) z += ker(static_cast<Eigen::Index>(c), k) * cand[c];
    out.push_back(std::move(z));
  }
  return out;
}

MatrixXcd ImageAlgebra::random_central_element(std::mt19937_64& rng, double tol) const {
  const auto n = static_cast<Eigen::Index>(n_);
  MatrixXcd z = MatrixXcd::Zero(n, n);
  for (const auto& c : center(tol)) z += numeric::uniform_square(rng) * c;
  return z;
}

FiniteTraceAlgebra ImageAlgebra::to_trace_algebra() const {
  std::vector<Mat> mats;
  for (const auto& b : basis()) mats.push_back(Mat::from_complex(b));
  return matrix_subalgebra(mats);
}

ImageAlgebra image_algebra(const ModuleAction& act, double rank_tol) {
  require(!act.generators.empty(), ErrorKind::InvalidParameter, "empty action");
  const auto n = static_cast<Eigen::Index>(act.dim);
  const auto nn = static_cast<std::size_t>(n * n);
  ImageAlgebra img;
  img.n_ = act.dim;
  img.generators_ = act.matrices();

  // grading by ad(K), when K is diagonal and every generator is homogeneous
  std::vector<int> cls(nn, 0);
  int class_count = 1;
  std::vector<int> gen_class(img.generators_.size(), 0);
  if (act.has("K") && is_diagonal(act.get("K"))) {
    int cc = 0;
    auto trial = weight_classes(act.get("K"), cc);
    bool ok = true;
    for (std::size_t g = 0; g < img.generators_.size() && ok; ++g) {
      gen_class[g] = homogeneous_class(img.generators_[g], trial);
      ok = gen_class[g] != -1;
    }
    if (ok) {
      cls = std::move(trial);
      class_count = cc;
    }
  }
  img.classes_.resize(static_cast<std::size_t>(class_count));
  for (auto& wc : img.classes_) wc.index_of.assign(nn, -1);
  for (std::size_t f = 0; f < nn; ++f) {
    auto& wc = img.classes_[static_cast<std::size_t>(cls[f])];
    wc.index_of[f] = static_cast<int>(wc.support.size());
    wc.support.push_back(f);
  }
  for (std::size_t c = 0; c < img.classes_.size(); ++c) {
    auto& wc = img.classes_[c];
    const std::size_t f = wc.support.front();
    const auto un = static_cast<std::size_t>(n);
    wc.partner = static_cast<std::size_t>(cls[(f % un) * un + f / un]);
    wc.neutral = c == static_cast<std::size_t>(cls[0]);
  }

  std::vector<SparseC> sparse;
  for (const auto& g : img.generators_) sparse.push_back(g.sparseView());

  std::deque<std::pair<std::size_t, std::size_t>> queue;  // (class, element)
  auto offer = [&](const MatrixXcd& m) {
    const double norm0 = m.norm();
    if (norm0 == 0.0) return;
    const int c = homogeneous_class(m, cls);
    // a non-homogeneous product would mean the grading is wrong; fall back to its dominant class
    Eigen::Index bp = 0, bq = 0;
    m.cwiseAbs().maxCoeff(&bp, &bq);
    const auto cid = static_cast<std::size_t>(c >= 0 ? c : cls[static_cast<std::size_t>(bp * n + bq)]);
    auto& wc = img.classes_[cid];
    Eigen::VectorXcd v(static_cast<Eigen::Index>(wc.support.size()));
    for (std::size_t k = 0; k < wc.support.size(); ++k) {
      const auto f = static_cast<Eigen::Index>(wc.support[k]);
      v(static_cast<Eigen::Index>(k)) = m(f / n, f % n);
    }
    const double res = orthogonalize(v, wc.elems);
    if (res <= rank_tol * norm0 || img.total_ >= nn) return;
    v /= res;
    wc.elems.push_back(std::move(v));
    ++img.total_;
    queue.emplace_back(cid, wc.elems.size() - 1);
  };

  offer(MatrixXcd::Identity(n, n));
  while (!queue.empty() && img.total_ < nn) {
    const auto [c, i] = queue.front();
    queue.pop_front();
    const auto& wc = img.classes_[c];
    MatrixXcd b = MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < wc.support.size(); ++k) {
      const auto f = static_cast<Eigen::Index>(wc.support[k]);
      b(f / n, f % n) = wc.elems[i](static_cast<Eigen::Index>(k));
    }
    for (const auto& g : sparse) offer(MatrixXcd(g * b));
  }
  return img;
}

bool semisimplicity_check(const ImageAlgebra& img, double gram_tol) { return img.gram_condition() > gram_tol; }

bool semisimplicity_check(const ModuleAction& act, double gram_tol) {
  return semisimplicity_check(image_algebra(act), gram_tol);
}

}  // namespace chtrace
