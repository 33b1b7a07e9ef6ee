#include "phasync/error.hpp"

namespace phasync {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "dimension_mismatch";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kNotUnitModulus: return "not_unit_modulus";
    case ErrorKind::kNotHermitian: return "not_hermitian";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kGuardViolation: return "guard_violation";
    case ErrorKind::kDidNotConverge: return "did_not_converge";
  }
  return "unknown";
}

}  // namespace phasync
