#include "forcing_lab/error.hpp"

namespace forcing_lab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::HorizonExceeded: return "HorizonExceeded";
    case ErrorKind::EmptyCondition: return "EmptyCondition";
    case ErrorKind::SlalomViolation: return "SlalomViolation";
    case ErrorKind::NonpositiveThreshold: return "NonpositiveThreshold";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorKind::InvalidCondition: return "InvalidCondition";
    case ErrorKind::NullSet: return "NullSet";
    case ErrorKind::ScoreTooLow: return "ScoreTooLow";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::HorizonTooShort: return "HorizonTooShort";
    case ErrorKind::LengthBoundViolated: return "LengthBoundViolated";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::InvalidGround: return "InvalidGround";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

}  // namespace forcing_lab
