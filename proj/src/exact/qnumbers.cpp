#include "chtrace/qnumbers.hpp"

#include <vector>

#include "chtrace/errors.hpp"

namespace chtrace {

CycloNum q_int(long h, int ell) {
  validate_cyclotomic_order(ell);
  const CycloNum num = CycloNum::root_power(ell, h) - CycloNum::root_power(ell, -h);
  const CycloNum den = CycloNum::root_power(ell, 1) - CycloNum::root_power(ell, -1);
  return num / den;
}

CycloNum q_factorial(long h, int ell) {
  require(h >= 0, ErrorKind::InvalidParameter, "q-factorial of a negative integer");
  CycloNum acc = CycloNum::from_rational(ell, Rational(1));
  for (long i = 2; i <= h; ++i) acc *= q_int(i, ell);
  return acc;
}

CycloNum q_binomial(long m, long h, int ell) {
  validate_cyclotomic_order(ell);
  require(m >= 0 && h >= 0 && h <= m, ErrorKind::InvalidParameter,
          "q_binomial requires 0 <= h <= m, got m=" + std::to_string(m) +
              ", h=" + std::to_string(h));
  // row[j] holds [i choose j] for the current i
  std::vector<CycloNum> row{CycloNum::from_rational(ell, Rational(1))};
  for (long i = 1; i <= m; ++i) {
    std::vector<CycloNum> next(static_cast<std::size_t>(i) + 1, CycloNum(ell));
    for (long j = 0; j <= i; ++j) {
      CycloNum v(ell);
      if (j <= i - 1) v += CycloNum::root_power(ell, -j) * row[static_cast<std::size_t>(j)];
      if (j >= 1) v += CycloNum::root_power(ell, i - j) * row[static_cast<std::size_t>(j - 1)];
      next[static_cast<std::size_t>(j)] = std::move(v);
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(h)];
}

}  // namespace chtrace
