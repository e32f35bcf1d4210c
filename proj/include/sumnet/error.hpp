#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumnet {

enum class ErrorCode {
  NonPrimeModulus,
  DivisionByZero,
  DimensionMismatch,
  ParseError,
  NotSimple,
  Disconnected,
  IsTree,
  OddDegreeVertex,
  InvalidCycle,
  InvalidNetwork,
  NotRegular,
  NotBiregular,
  MissingVariable,
  InfeasibleAssignment,
  CharacteristicMismatch,
  UndeliveredInput,
  StateSpaceTooLarge,
  NonLinearPlan,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every module reports failures through this one exception type; the code
// lets callers (the CLI in particular) branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sumnet
