#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace chtrace {

enum class ActingAlgebra { Full, Borel, Other };

const char* to_string(ActingAlgebra a) noexcept;

/// Named complex generator matrices acting on C^dim.
struct ModuleAction {
  std::size_t dim = 0;
  ActingAlgebra algebra = ActingAlgebra::Other;
  int ell = 0;  // 0 when not attached to a root of unity
  std::vector<std::pair<std::string, Eigen::MatrixXcd>> generators;

  ModuleAction() = default;
  ModuleAction(ActingAlgebra algebra, int ell, std::vector<std::pair<std::string, Eigen::MatrixXcd>> gens);

  bool has(const std::string& name) const;
  /// Throws invalid-parameter when the generator is absent.
  const Eigen::MatrixXcd& get(const std::string& name) const;
  std::vector<Eigen::MatrixXcd> matrices() const;

  /// g A g^{-1} for every generator.
  ModuleAction conjugated(const Eigen::MatrixXcd& g) const;
  /// Block-diagonal r-fold direct sum.
  ModuleAction direct_power(int r) const;
};

}  // namespace chtrace
