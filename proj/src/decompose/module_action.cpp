#include "chtrace/module_action.hpp"

#include "chtrace/errors.hpp"

namespace chtrace {

const char* to_string(ActingAlgebra a) noexcept {
  switch (a) {
    case ActingAlgebra::Full: return "full";
    case ActingAlgebra::Borel: return "borel";
    case ActingAlgebra::Other: return "other";
  }
  return "other";
}

ModuleAction::ModuleAction(ActingAlgebra alg, int l, std::vector<std::pair<std::string, Eigen::MatrixXcd>> gens)
    : algebra(alg), ell(l), generators(std::move(gens)) {
  require(!generators.empty(), ErrorKind::InvalidParameter, "module action needs at least one generator");
  dim = static_cast<std::size_t>(generators.front().second.rows());
  for (const auto& [name, m] : generators)
    require(static_cast<std::size_t>(m.rows()) == dim && static_cast<std::size_t>(m.cols()) == dim,
            ErrorKind::InvalidParameter, "generator " + name + " has the wrong shape");
  if (has("K")) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(get("K"));
    require(lu.isInvertible(), ErrorKind::InvalidParameter, "K must be invertible");
  }
}

bool ModuleAction::has(const std::string& name) const {
  for (const auto& g : generators)
    if (g.first == name) return true;
  return false;
}

const Eigen::MatrixXcd& ModuleAction::get(const std::string& name) const {
  for (const auto& g : generators)
    if (g.first == name) return g.second;
  fail(ErrorKind::InvalidParameter, "module action has no generator " + name);
}

std::vector<Eigen::MatrixXcd> ModuleAction::matrices() const {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& g : generators) out.push_back(g.second);
  return out;
}

ModuleAction ModuleAction::conjugated(const Eigen::MatrixXcd& g) const {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(g);
  require(lu.isInvertible(), ErrorKind::InvalidParameter, "conjugating matrix is singular");
  const Eigen::MatrixXcd gi = lu.inverse();
  auto gens = generators;
  for (auto& [name, m] : gens) m = g * m * gi;
  return ModuleAction(algebra, ell, std::move(gens));
}

ModuleAction ModuleAction::direct_power(int r) const {
  require(r >= 1, ErrorKind::InvalidParameter, "direct power needs r >= 1");
  const auto n = static_cast<Eigen::Index>(dim);
  auto gens = generators;
  for (auto& [name, m] : gens) {
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(n * r, n * r);
    for (int i = 0; i < r; ++i) big.block(i * n, i * n, n, n) = m;
    m = std::move(big);
  }
  return ModuleAction(algebra, ell, std::move(gens));
}

}  // namespace chtrace
