#include "chtrace/errors.hpp"

namespace chtrace {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Arithmetic: return "arithmetic";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::NotSemisimple: return "not-semisimple";
    case ErrorKind::DecompositionFailed: return "decomposition-failed";
    case ErrorKind::ConstructionFailed: return "construction-failed";
    case ErrorKind::UnsupportedCharacter: return "unsupported-character";
    case ErrorKind::InvalidRep: return "invalid-rep";
  }
  return "unknown";
}

}  // namespace chtrace
