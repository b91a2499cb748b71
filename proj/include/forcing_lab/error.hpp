#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace forcing_lab {

enum class ErrorKind {
  ResolutionTooCoarse,
  NotAPartition,
  HorizonExceeded,
  EmptyCondition,
  SlalomViolation,
  NonpositiveThreshold,
  InvalidWeight,
  InvalidEpsilon,
  InvalidCondition,
  NullSet,
  ScoreTooLow,
  SearchExhausted,
  HorizonTooShort,
  LengthBoundViolated,
  PreconditionFailed,
  InvalidGround,
  ParseError,
  CapacityExceeded,
};

std::string_view to_string(ErrorKind kind);

// Every module reports failures through this one exception type; `kind()`
// names the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace forcing_lab
