#pragma once

#include <string>

#include "chtrace/scalar_json.hpp"
#include "chtrace/trace_algebra.hpp"

namespace chtrace {

/// {"dim", "labels", "unit", "trace", "ch_degree", "structure": [[i,j,k,c],...], "field"}.
/// Labels are optional on input and default to e0, e1, ...
json algebra_to_json(const FiniteTraceAlgebra& a);
/// Throws invalid-input on malformed documents.
FiniteTraceAlgebra algebra_from_json(const json& j);
FiniteTraceAlgebra load_algebra(const std::string& path);

json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j, const Field& f);

}  // namespace chtrace
