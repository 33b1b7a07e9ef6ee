#pragma once

#include <stdexcept>
#include <string>

namespace phasync {

enum class ErrorKind {
  kDimensionMismatch,
  kInvalidArgument,
  kNotUnitModulus,
  kNotHermitian,
  kDegenerate,
  kGuardViolation,
  kDidNotConverge,
};

const char* to_string(ErrorKind kind) noexcept;

// Every recoverable failure in the library is reported as an Error carrying a
// machine-readable kind next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace phasync
