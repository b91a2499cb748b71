#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

// Versioned scenario documents in, versioned reports out.
//
// Scenario: {"version": 1, "kind": K, "seed": u64, "params": {...}}
// Report:   {"version": 1, "kind", "seed", "inputs", "outputs", "checks",
//            "status", "error", "wall_time_ms"}
//
// Everything except wall_time_ms is a deterministic function of the
// scenario and seed.
namespace forcing_lab {

inline constexpr int kScenarioVersion = 1;

enum class ExitCode : int { Ok = 0, Failed = 1, SchemaError = 2 };

const std::vector<std::string_view>& scenario_kinds();
// extend and generic-run draw random bits and need a seed.
bool kind_needs_seed(std::string_view kind);

struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> retry_cap;
  std::optional<std::uint64_t> exhaustive_cap;
};

struct ScenarioReport {
  ExitCode exit_code = ExitCode::Ok;
  nlohmann::json body;  // the deterministic part
  double wall_time_ms = 0;

  // body plus wall_time_ms.
  nlohmann::json document() const;
};

// `expected_kind`, when given, must match the document's kind (the CLI
// subcommand). Never throws for bad input; problems end up in the report.
ScenarioReport run_scenario(const nlohmann::json& scenario, const ScenarioOverrides& overrides = {},
                            std::optional<std::string_view> expected_kind = std::nullopt);

// Parses `text` first; a syntax error is a schema error.
ScenarioReport run_scenario_text(std::string_view text, const ScenarioOverrides& overrides = {},
                                 std::optional<std::string_view> expected_kind = std::nullopt);

}  // namespace forcing_lab
