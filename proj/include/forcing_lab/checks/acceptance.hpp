#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace forcing_lab::checks {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string name;
  double limit_seconds = 0;  // 0: no time limit
  std::function<Outcome(std::uint64_t seed)> run;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

inline constexpr std::uint64_t kDefaultAcceptanceSeed = 0x5eed2024;

const std::vector<Criterion>& acceptance_criteria();

// Runs one criterion, catching library errors as failures and applying the
// time limit.
CriterionResult run_criterion(const Criterion& c, std::uint64_t seed);

// "PASS  4  extension correctness  (12.3 s / 30 s)  detail"
std::string format_result(const CriterionResult& r, bool with_time);

}  // namespace forcing_lab::checks
