#pragma once

#include <stdexcept>
#include <string>

namespace kreinreg {

// All failure conditions are reported by throwing one of the types below.
// Each carries a human-readable message prefixed with the condition name.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define KREINREG_DEFINE_ERROR(NAME)                                       \
  struct NAME : Error {                                                   \
    explicit NAME(const std::string& what) : Error(#NAME ": " + what) {}  \
  }

KREINREG_DEFINE_ERROR(UnsupportedNode);
KREINREG_DEFINE_ERROR(QuadratureFailure);
KREINREG_DEFINE_ERROR(EmptyCombination);
KREINREG_DEFINE_ERROR(UnderflowRisk);
KREINREG_DEFINE_ERROR(InvalidProfile);
KREINREG_DEFINE_ERROR(DiagonalIndex);
KREINREG_DEFINE_ERROR(BudgetExceeded);
KREINREG_DEFINE_ERROR(NegativeSquare);
KREINREG_DEFINE_ERROR(TruncationMismatch);
KREINREG_DEFINE_ERROR(IndexOutOfRange);
KREINREG_DEFINE_ERROR(DegenerateGram);
KREINREG_DEFINE_ERROR(NotPositiveDefinite);
KREINREG_DEFINE_ERROR(SingularDecomposition);
KREINREG_DEFINE_ERROR(EmptyFamily);
KREINREG_DEFINE_ERROR(SupportStraddlesOrigin);
KREINREG_DEFINE_ERROR(ConfigError);
KREINREG_DEFINE_ERROR(IoError);

#undef KREINREG_DEFINE_ERROR

}  // namespace kreinreg
