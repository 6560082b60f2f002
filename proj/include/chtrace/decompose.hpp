#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chtrace/module_action.hpp"
#include "chtrace/scalar_json.hpp"
#include "chtrace/trace_algebra.hpp"
#include "chtrace/uq_sl2.hpp"

namespace chtrace {

using Eigen::MatrixXcd;

struct DecomposeTolerances {
  double rank = 1e-9;        // closure rank growth, relative to the candidate norm
  double gram = 1e-6;        // smallest / largest singular value of the trace form
  double cluster = 1e-6;     // eigenvalue gap, relative to max(1, |spectrum|)
  double commute = 1e-8;     // [C, g] residual, relative
  double scalar = 1e-8;      // scalar read-out of central elements
  int reseeds = 5;
};

/// Unital algebra generated by the matrices of an action, held numerically as
/// a Frobenius-orthonormal basis. When the action has a diagonal "K", the
/// basis is graded by the eigenvalue ratio of ad(K) and each element only
/// stores its entries on the support of its class.
class ImageAlgebra {
 public:
  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return total_; }
  bool graded() const noexcept { return classes_.size() > 1; }
  std::size_t class_count() const noexcept { return classes_.size(); }

  /// Basis element i as a dense matrix.
  MatrixXcd element(std::size_t i) const;
  std::vector<MatrixXcd> basis() const;

  /// Smallest singular value of the trace form over the largest (blockwise
  /// when graded); 0 for a degenerate form.
  double gram_condition() const;

  /// Basis of the center, as dense matrices.
  std::vector<MatrixXcd> center(double tol = 1e-9) const;
  /// Random combination of the center basis with coefficients in [-1,1]^2.
  MatrixXcd random_central_element(std::mt19937_64& rng, double tol = 1e-9) const;

  /// Exact-shape trace algebra over C64 with the matrix trace and
  /// ch_degree = ambient dim. Intended for small dimensions.
  FiniteTraceAlgebra to_trace_algebra() const;

 private:
  friend ImageAlgebra image_algebra(const ModuleAction&, double);

  struct WeightClass {
    std::vector<std::size_t> support;  // flat row-major entry indices
    std::vector<int> index_of;         // flat index -> position in support, or -1
    std::vector<Eigen::VectorXcd> elems;
    std::size_t partner = 0;           // class of the inverse ratio
    bool neutral = false;              // ratio 1
  };

  std::size_t n_ = 0, total_ = 0;
  std::vector<WeightClass> classes_;
  std::vector<MatrixXcd> generators_;
};

/// Throws invalid-parameter on an empty action; otherwise never fails. The
/// rank tolerance is relative to the norm of each candidate product.
ImageAlgebra image_algebra(const ModuleAction& act, double rank_tol = 1e-9);

/// Nondegenerate trace form on the image algebra.
bool semisimplicity_check(const ImageAlgebra& img, double gram_tol = 1e-6);
bool semisimplicity_check(const ModuleAction& act, double gram_tol = 1e-6);

struct Summand {
  int irrep_dim = 0;
  int multiplicity = 0;
  sl2::CentralCharZ0 z0;
  bool z0_complete = false;  // false when F is absent, y is then 0
  Complex central_value;     // eigenvalue of the separating central element
};

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v) noexcept;

struct DecompositionReport {
  std::size_t dim = 0;
  bool semisimple = false;
  bool conclusive = false;
  std::string note;
  std::vector<Summand> summands;  // sorted by (irrep_dim, multiplicity, central value)
  int attempts = 0;
  double invariance_residual = 0;  // max over blocks of |g V - V g_S| / |g|
  double eigen_gap = 0;            // smallest gap between clusters
  double commutator_residual = 0;  // of the separating element

  std::size_t total_dim() const;
  json to_json() const;
};

/// Splits the module along the eigenspaces of `central`, which must commute
/// with every generator. A block whose restricted image is not a full matrix
/// algebra triggers a retry with a random central element of the image
/// algebra; after the reseeds the report is marked inconclusive. Throws
/// invalid-parameter for a non-commuting element and decomposition-failed when
/// the commutant of a block is not a perfect square.
DecompositionReport isotypic_decompose(const ModuleAction& act, const MatrixXcd& central,
                                       const DecomposeTolerances& tol = {}, std::uint64_t seed = 1);

// ------------------------------------------------------------ verifiers

struct TrialResult {
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::Fail;
  std::string reason;
  std::vector<sl2::CentralCharZ0> chars;  // inputs
  DecompositionReport report;
  double z0_residual = 0;
  json to_json() const;
};

struct VerificationReport {
  std::string experiment;
  int ell = 0;
  int r = 1;
  std::uint64_t seed = 0;
  int expected_count = 0;
  int expected_mult = 0;
  int expected_irrep_dim = 0;
  std::vector<TrialResult> trials;  // ordered by seed

  Verdict overall() const;
  int count(Verdict v) const;
  json to_json() const;
  std::string to_text() const;
};

/// Tensor products of random generic pairs (seeds seed, seed+1, ...).
VerificationReport verify_clebsch_gordan(int ell, std::uint64_t seed, int trials, int jobs = 1,
                                         const DecomposeTolerances& tol = {});
/// One tensor product trial with the given characters and branches.
TrialResult clebsch_gordan_trial(int ell, const sl2::CentralCharZ0& a, int branch_a, const sl2::CentralCharZ0& b,
                                 int branch_b, std::uint64_t seed, const DecomposeTolerances& tol = {});
/// A pair whose product character is (0, 1, 0), off the unramified locus.
std::pair<sl2::CentralCharZ0, sl2::CentralCharZ0> adversarial_pair();

VerificationReport verify_branching(int ell, std::uint64_t seed, int trials, int jobs = 1,
                                    const DecomposeTolerances& tol = {});
TrialResult branching_trial(int ell, const sl2::CentralCharZ0& chi, int branch, std::uint64_t seed,
                            const DecomposeTolerances& tol = {});

/// r-fold direct sum of one generic cyclic module; also checks the block
/// spectrum of its image algebra against {(ell, r)}.
VerificationReport verify_rescaled_restriction(int ell, int r, std::uint64_t seed, int trials = 1,
                                               const DecomposeTolerances& tol = {});

}  // namespace chtrace
