#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padyn {

enum class ErrorKind {
    NotPrime,
    NotIrreducible,
    NotEisenstein,
    FieldMismatch,
    NotInvertibleAtPrecision,
    NotIntegral,
    HenselConditionFailed,
    PrecisionExhausted,
    PrecisionTooLowToDecide,
    DegreeNotDivisibleByP,
    DegreeNotPrimePower,
    StarConditionFailed,
    HypothesisFailed,
    InexactDivision,
    BudgetExceeded,
    NotIntegralAt2,
    DepthCapReached,
    NotSquarefree,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can map it to a stable name.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

}  // namespace padyn
