#pragma once

#include "json.hpp"

#include "chtrace/scalar.hpp"

namespace chtrace {

using json = nlohmann::json;

/// {"tag":"rat","n":"-3","d":"7"} | {"tag":"cyc","ell":5,"coeffs":["1","-1/2",...]}
/// | {"tag":"c64","re":x,"im":y}. Big integers travel as decimal strings.
json to_json(const Scalar& s);

/// Parses the tagged form above, or a shorthand (integer, "p/q" string,
/// [re, im] pair, or a float when the target field is C64), then promotes
/// to the target field.
Scalar scalar_from_json(const json& j, const Field& target);

/// Tagged form only; the value keeps its own field.
Scalar scalar_from_json(const json& j);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

}  // namespace chtrace
