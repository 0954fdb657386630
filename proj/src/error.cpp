#include "tsr/error.hpp"

namespace tsr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::DegenerateGraph: return "DegenerateGraph";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::ResampleBudgetExceeded: return "ResampleBudgetExceeded";
    case ErrorCode::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorCode::EscalationCapExceeded: return "EscalationCapExceeded";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::NoTrials: return "NoTrials";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::InvalidArgs: return "InvalidArgs";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace tsr
