#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

namespace forcing_lab::checks {

// The fixture set compiled into the library.
const nlohmann::json& bundled_fixtures();

struct SelftestOptions {
  std::uint64_t seed = 0;
  // Replaces the bundled fixtures (the text of a fixtures file).
  std::optional<std::string> fixtures_text;
  bool run_criteria = true;
  bool run_fixtures = true;
};

struct SelftestReport {
  int exit_code = 0;
  nlohmann::json body;  // deterministic for a given seed and fixture set
  double wall_time_ms = 0;
};

// Prints one PASS/FAIL line per criterion and fixture to `matrix`.
SelftestReport run_selftest(const SelftestOptions& options, std::ostream& matrix);

}  // namespace forcing_lab::checks
