#pragma once

#include "chtrace/cyclo.hpp"

namespace chtrace {

/// Balanced quantum integer [h] = (eps^h - eps^-h) / (eps - eps^-1).
CycloNum q_int(long h, int ell);

/// [h]! = [h][h-1]...[1], with [0]! = 1.
CycloNum q_factorial(long h, int ell);

/// Balanced Gaussian binomial [m choose h] specialized at eps.
///
/// Evaluated with the q-Pascal rule
///   [m, h] = eps^{-h} [m-1, h] + eps^{m-h} [m-1, h-1],
/// which agrees with [m]! / ([m-h]! [h]!) whenever that quotient is defined
/// at eps and stays valid when both factorials vanish (m >= 2 ell).
CycloNum q_binomial(long m, long h, int ell);

}  // namespace chtrace
