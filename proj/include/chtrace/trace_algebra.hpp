#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chtrace/linalg.hpp"
#include "chtrace/scalar.hpp"

namespace chtrace {

struct StructureTerm {
  std::size_t k;
  Scalar coeff;
};

/// Finite-dimensional associative algebra given by structure constants
/// e_i e_j = sum_k c_ij^k e_k, with a scalar-valued trace functional and an
/// intended Cayley-Hamilton degree n. Immutable once built.
class FiniteTraceAlgebra {
 public:
  FiniteTraceAlgebra(Field field, std::vector<std::string> labels,
                     std::vector<std::vector<StructureTerm>> structure, Vec unit, Vec trace,
                     int ch_degree);

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Vec& unit() const noexcept { return unit_; }
  const Vec& trace_vec() const noexcept { return trace_; }
  int ch_degree() const noexcept { return ch_degree_; }

  /// Terms of e_i e_j.
  const std::vector<StructureTerm>& product(std::size_t i, std::size_t j) const {
    return structure_[i * dim() + j];
  }
  const std::vector<std::vector<StructureTerm>>& structure() const noexcept { return structure_; }

  Vec basis_vector(std::size_t i) const { return unit_vec(field_, dim(), i); }
  Vec zero() const { return zero_vec(field_, dim()); }
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec power(const Vec& a, int e) const;
  Scalar trace(const Vec& a) const;
  /// Matrix of x -> a x in the basis.
  Mat left_multiplication(const Vec& a) const;
  /// gram[i][j] = t(e_i e_j).
  Mat trace_form() const;

  FiniteTraceAlgebra with_trace(Vec trace, int ch_degree) const;
  FiniteTraceAlgebra promote(const Field& f) const;

 private:
  Field field_;
  std::vector<std::string> labels_;
  std::vector<std::vector<StructureTerm>> structure_;
  Vec unit_;
  Vec trace_;
  int ch_degree_;
};

// ------------------------------------------------------------ diagnostics

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::string witness;  // empty when passed
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool ok() const;
  const AxiomCheck* find(const std::string& name) const;
};

/// Axiom names used in reports.
inline constexpr const char* kAxAssociativity = "associativity";
inline constexpr const char* kAxUnit = "unit";
inline constexpr const char* kAxTraceSymmetry = "trace_symmetry";  // t(ab) = t(ba)
inline constexpr const char* kAxTraceOfUnit = "trace_of_unit";      // t(1) = n

/// Tolerance used for complex-tag comparisons in the checks below.
inline constexpr double kCheckTol = 1e-9;

AxiomReport check_axioms(const FiniteTraceAlgebra& a);

// ------------------------------------------------------------ Cayley-Hamilton

/// Coefficients P_1..P_n of t^n + sum_i P_i t^{n-i} from the power traces
/// t(a), ..., t(a^n) by the Newton identities. Requires n >= 1 and at least
/// n power traces.
std::vector<Scalar> char_poly_coeffs(const std::vector<Scalar>& power_traces, int n);

/// chi_a^n(a) evaluated inside A with n = ch_degree.
Vec ch_defect(const FiniteTraceAlgebra& a, const Vec& x);

/// True iff the axioms pass and the CH defect vanishes on basis vectors,
/// pairwise basis sums and sample_count seeded random elements. Complex
/// tags compare against tol * dim.
bool ch_check(const FiniteTraceAlgebra& a, int sample_count, std::uint64_t seed,
              double tol = kCheckTol);

// ------------------------------------------------------------ structure

/// Basis of the kernel of the trace form (exact on exact tags).
std::vector<Vec> radical(const FiniteTraceAlgebra& a);

struct Block {
  int k;  // matrix size of the simple block
  int h;  // multiplicity in the trace
  friend bool operator==(const Block&, const Block&) = default;
  friend auto operator<=>(const Block&, const Block&) = default;
};

struct BlockSpectrum {
  std::vector<Block> blocks;  // sorted by (k, h)
  friend bool operator==(const BlockSpectrum&, const BlockSpectrum&) = default;
  std::string to_string() const;
};

struct BlockOptions {
  std::uint64_t seed = 1;
  int max_attempts = 5;
  double cluster_gap = 1e-6;
  double integrality_tol = 1e-6;
};

/// Splits the semisimple quotient A / rad(A) numerically (over C) and reads
/// the multiplicity h_i of each simple block from the trace of its central
/// idempotent. Throws decomposition-failed when an h_i is not integral or
/// sum h_i k_i != n.
BlockSpectrum block_decompose(const FiniteTraceAlgebra& a, const BlockOptions& opts = {});

struct ReducedTrace {
  Vec trace;                      // t_red(e_i); exact when the multiple is known
  std::optional<int> multiple;    // r with t = r * t_red, if it exists
  BlockSpectrum spectrum;
};

/// Reduced trace of a split semisimple algebra (every block with h = 1).
/// Throws not-semisimple when the radical is nonzero.
ReducedTrace reduced_trace(const FiniteTraceAlgebra& a, const BlockOptions& opts = {});

// ------------------------------------------------------------ constructions

FiniteTraceAlgebra rescale_trace(const FiniteTraceAlgebra& a, int r);
FiniteTraceAlgebra direct_sum(const FiniteTraceAlgebra& a, const FiniteTraceAlgebra& b);
FiniteTraceAlgebra tensor_product(const FiniteTraceAlgebra& a, const FiniteTraceAlgebra& b);

// ------------------------------------------------------------ standard algebras

/// M_k with matrix-unit basis e_ij (row-major) and ordinary trace, n = k.
FiniteTraceAlgebra matrix_algebra(int k, const Field& f = Field::rationals());
/// Q[Z/n] with basis g^0..g^{n-1} and regular trace t(1)=n, t(g^i)=0.
FiniteTraceAlgebra cyclic_group_algebra(int n, const Field& f = Field::rationals());
/// Q[x]/(x^m) with basis 1..x^{m-1} and regular trace t(1)=m, t(x^i)=0.
FiniteTraceAlgebra truncated_polynomial(int m, const Field& f = Field::rationals());
/// Upper-triangular k x k matrices with the restricted matrix trace, n = k.
FiniteTraceAlgebra upper_triangular(int k, const Field& f = Field::rationals());
/// Unital subalgebra of M_n spanned by the given basis matrices (which must
/// be closed under products and contain the identity), with matrix trace.
FiniteTraceAlgebra matrix_subalgebra(const std::vector<Mat>& basis, std::vector<std::string> labels = {});

}  // namespace chtrace
