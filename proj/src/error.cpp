#include "sumnet/error.hpp"

namespace sumnet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::IsTree: return "IsTree";
    case ErrorCode::OddDegreeVertex: return "OddDegreeVertex";
    case ErrorCode::InvalidCycle: return "InvalidCycle";
    case ErrorCode::InvalidNetwork: return "InvalidNetwork";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotBiregular: return "NotBiregular";
    case ErrorCode::MissingVariable: return "MissingVariable";
    case ErrorCode::InfeasibleAssignment: return "InfeasibleAssignment";
    case ErrorCode::CharacteristicMismatch: return "CharacteristicMismatch";
    case ErrorCode::UndeliveredInput: return "UndeliveredInput";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::NonLinearPlan: return "NonLinearPlan";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sumnet
