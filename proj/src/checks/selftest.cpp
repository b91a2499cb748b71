#include "forcing_lab/checks/selftest.hpp"

#include <chrono>
#include <ostream>

#include "forcing_lab/checks/acceptance.hpp"
#include "forcing_lab/scenario.hpp"

namespace forcing_lab::checks {

namespace detail {
extern const char* const kBundledFixtures;
}

using nlohmann::json;

namespace {

// `expected` must be contained in `actual`: objects key by key, arrays and
// scalars by equality. Returns the first mismatching path, or "".
std::string first_mismatch(const json& expected, const json& actual, const std::string& path) {
  if (expected.is_object()) {
    if (!actual.is_object()) return path;
    for (const auto& [key, value] : expected.items()) {
      if (!actual.contains(key)) return path + "." + key;
      std::string inner = first_mismatch(value, actual.at(key), path + "." + key);
      if (!inner.empty()) return inner;
    }
    return "";
  }
  return expected == actual ? "" : path;
}

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

FixtureResult run_fixture(const json& fixture) {
  FixtureResult r;
  r.name = fixture.value("name", std::string("(unnamed)"));
  if (!fixture.contains("scenario") || !fixture.contains("expect") || !fixture.at("expect").is_object()) {
    r.detail = "fixture needs 'scenario' and 'expect'";
    return r;
  }
  const json& expect = fixture.at("expect");
  const ScenarioReport report = run_scenario(fixture.at("scenario"));
  const int code = static_cast<int>(report.exit_code);
  if (expect.contains("exit_code") && expect.at("exit_code") != code) {
    r.detail = "exit code " + std::to_string(code) + ", expected " + expect.at("exit_code").dump();
    if (!report.body["error"].is_null()) r.detail += " (" + report.body["error"].dump() + ")";
    return r;
  }
  if (expect.contains("error_kind")) {
    const json& err = report.body["error"];
    if (err.is_null() || err["kind"] != expect.at("error_kind")) {
      r.detail = "error " + err.dump() + ", expected kind " + expect.at("error_kind").dump();
      return r;
    }
  }
  if (expect.contains("outputs")) {
    std::string where = first_mismatch(expect.at("outputs"), report.body["outputs"], "outputs");
    if (!where.empty()) {
      r.detail = "mismatch at " + where;
      return r;
    }
  }
  r.passed = true;
  r.detail = "exit " + std::to_string(code);
  return r;
}

}  // namespace

const json& bundled_fixtures() {
  static const json fixtures = json::parse(detail::kBundledFixtures);
  return fixtures;
}

SelftestReport run_selftest(const SelftestOptions& options, std::ostream& matrix) {
  const auto start = std::chrono::steady_clock::now();
  SelftestReport report;
  bool ok = true;
  json criteria = json::array();
  if (options.run_criteria) {
    for (const auto& c : acceptance_criteria()) {
      const CriterionResult r = run_criterion(c, options.seed);
      matrix << format_result(r, false) << std::endl;
      criteria.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      ok = ok && r.passed;
    }
  }

  json fixtures = json::array();
  if (options.run_fixtures) {
    json doc;
    std::string load_error;
    try {
      doc = options.fixtures_text ? json::parse(*options.fixtures_text) : bundled_fixtures();
      if (!doc.is_object() || doc.value("version", 0) != 1 || !doc.contains("fixtures") ||
          !doc.at("fixtures").is_array()) {
        load_error = "fixture file needs {\"version\": 1, \"fixtures\": [...]}";
      }
    } catch (const json::exception& e) {
      load_error = e.what();
    }
    std::vector<FixtureResult> results;
    if (!load_error.empty()) {
      results.push_back({"fixture-file", false, load_error});
    } else {
      for (const auto& f : doc.at("fixtures")) results.push_back(run_fixture(f));
    }
    for (const auto& r : results) {
      matrix << (r.passed ? "PASS" : "FAIL") << "  fixture " << r.name << "  " << r.detail << std::endl;
      fixtures.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      ok = ok && r.passed;
    }
  }

  report.exit_code = ok ? 0 : 1;
  report.body = {{"version", kScenarioVersion},
                 {"kind", "selftest"},
                 {"seed", options.seed},
                 {"criteria", criteria},
                 {"fixtures", fixtures},
                 {"status", ok ? "ok" : "failed"}};
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace forcing_lab::checks
