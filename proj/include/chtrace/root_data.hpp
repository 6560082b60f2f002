#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "chtrace/scalar_json.hpp"

namespace chtrace {

using IntMatrix = std::vector<std::vector<int>>;
using Root = std::vector<int>;  // coordinates in the simple-root basis

/// Root system of a simple Lie algebra, Bourbaki numbering.
struct RootDatum {
  char type = 'A';
  int rank = 0;
  IntMatrix cartan;          // cartan[i][j] = <alpha_i^vee, alpha_j>
  std::vector<int> d;        // symmetrizers: d_i cartan[i][j] = d_j cartan[j][i], coprime, d_i >= 1
  std::vector<Root> positive_roots;  // ordered by height, then lexicographically
  int N = 0;                 // number of positive roots
  std::vector<int> w0_diagram;  // simple root i -> index of -w0(alpha_i), 0-based
  int s = 0;                 // number of orbits of w0_diagram

  std::string name() const { return std::string(1, type) + std::to_string(rank); }
  /// (alpha, beta) = sum_i a_i d_i cartan[i][j] b_j.
  long inner(const Root& a, const Root& b) const;
};

bool admissible(char type, int rank);
/// Throws invalid-parameter for inadmissible (type, rank).
RootDatum build_root_datum(char type, int rank);
/// Parses names like "A2", "e6".
RootDatum build_root_datum(const std::string& name);

/// Classical number of positive roots.
int classical_positive_root_count(char type, int rank);

bool validate_ell(const RootDatum& rd, int ell);

struct Prediction {
  std::string key;
  long exponent;  // value = ell^exponent
  mpz_class value;
};

struct PredictionTable {
  std::string type_name;
  int rank = 0, N = 0, s = 0, ell = 0;
  std::vector<Prediction> rows;  // fixed order, see kPredictionKeys

  const Prediction& at(const std::string& key) const;
  /// One "key=value (ell^exponent)" line per row after a header line.
  std::string to_text() const;
  json to_json() const;
};

inline constexpr const char* kPredictionKeys[] = {
    "rank_U_over_Z0", "degree_U",    "deg_Z_over_Z0",  "rank_Borel_over_Z0plus", "degree_Borel",
    "rank_Zplus",     "tensor_mult", "branch_mult",    "branch_count",           "borel_tensor_mult"};

/// Throws invalid-parameter when validate_ell fails.
PredictionTable predict(const RootDatum& rd, int ell);

}  // namespace chtrace
