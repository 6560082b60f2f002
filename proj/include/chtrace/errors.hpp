#pragma once

#include <stdexcept>
#include <string>

namespace chtrace {

enum class ErrorKind {
  InvalidParameter,
  Arithmetic,
  InvalidInput,
  NotSemisimple,
  DecompositionFailed,
  ConstructionFailed,
  UnsupportedCharacter,
  InvalidRep,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library. The kind maps
/// one-to-one onto the error names used in reports and CLI messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace chtrace
