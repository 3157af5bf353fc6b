#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace afl {

enum class ErrorCode {
  // term syntax
  EmptyInput,
  UnbalancedParenthesis,
  UnknownSymbol,
  MalformedVariable,
  UnexpectedToken,
  VariableIndexExceedsN,
  // free algebras
  IndexOutOfRange,
  DimensionMismatch,
  CellBudgetExceeded,
  PointOutOfCube,
  // continued fractions
  ThetaOutOfRange,
  DIsPerfectSquare,
  InvalidQuotients,
  StreamExhausted,
  // unit-interval backends
  BackendMismatch,
  ElementOutOfRange,
  UnassignedVariable,
  ArithmeticOverflow,
  // decisions
  ArityMismatch,
  NoKnownReduction,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

/// Every failure in the library is reported through this type. Parse errors
/// carry the zero-based character offset of the offending symbol.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(message), code_(code), position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

  /// True for the failures the CLI reports as "budget exceeded".
  bool is_budget() const noexcept {
    return code_ == ErrorCode::StreamExhausted ||
           code_ == ErrorCode::CellBudgetExceeded;
  }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace afl
