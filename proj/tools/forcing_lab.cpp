#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "forcing_lab/checks/acceptance.hpp"
#include "forcing_lab/checks/selftest.hpp"
#include "forcing_lab/scenario.hpp"

namespace {

using nlohmann::json;

struct Flags {
  std::string input;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> retry_cap;
  std::optional<std::uint64_t> exhaustive_cap;
  std::string only;
};

void setup_logging() {
  auto logger = spdlog::stderr_logger_st("forcing_lab");
  logger->set_pattern("forcing_lab: [%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("FORCING_LAB_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

std::optional<std::string> read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text << '\n';
  return static_cast<bool>(out);
}

void print_violations(std::ostream& os, const json& outputs) {
  if (!outputs.contains("violations")) return;
  const json& v = outputs.at("violations");
  if (v.empty()) {
    os << "no violations\n";
    return;
  }
  std::size_t width = 4;
  for (const auto& row : v) width = std::max(width, row["rule"].get<std::string>().size());
  os << std::left;
  os << "  " << std::string("rule") << std::string(width - 4 + 2, ' ') << "detail\n";
  for (const auto& row : v) {
    const std::string rule = row["rule"].get<std::string>();
    os << "  " << rule << std::string(width - rule.size() + 2, ' ') << row["detail"].get<std::string>() << "\n";
  }
}

int run_kind(const std::string& kind, const Flags& flags) {
  const auto text = read_text(flags.input);
  if (!text) {
    spdlog::error("cannot read {}", flags.input);
    return static_cast<int>(forcing_lab::ExitCode::SchemaError);
  }
  forcing_lab::ScenarioOverrides overrides{flags.seed, flags.retry_cap, flags.exhaustive_cap};
  spdlog::info("running {} scenario from {}", kind, flags.input);
  const auto report = forcing_lab::run_scenario_text(*text, overrides, kind);
  const std::string doc = report.document().dump(2);

  const json& body = report.body;
  spdlog::info("status {} in {:.1f} ms", body["status"].get<std::string>(), report.wall_time_ms);
  if (!body["error"].is_null()) spdlog::warn("{}: {}", body["error"]["kind"].get<std::string>(),
                                             body["error"]["detail"].get<std::string>());
  for (const auto& c : body["checks"]) {
    if (!c["passed"].get<bool>()) spdlog::warn("check failed: {}", c["name"].get<std::string>());
  }

  if (flags.out.empty()) {
    if (kind == "diagram") print_violations(std::cerr, body["outputs"]);
    std::cout << doc << "\n";
  } else {
    if (!write_text(flags.out, doc)) {
      spdlog::error("cannot write {}", flags.out);
      return static_cast<int>(forcing_lab::ExitCode::Failed);
    }
    if (kind == "diagram") print_violations(std::cout, body["outputs"]);
  }
  return static_cast<int>(report.exit_code);
}

int run_selftest(const Flags& flags) {
  forcing_lab::checks::SelftestOptions options;
  options.seed = flags.seed.value_or(forcing_lab::checks::kDefaultAcceptanceSeed);
  if (!flags.input.empty()) {
    options.fixtures_text = read_text(flags.input);
    if (!options.fixtures_text) {
      spdlog::error("cannot read {}", flags.input);
      return 2;
    }
  }
  options.run_criteria = flags.only != "fixtures";
  options.run_fixtures = flags.only != "criteria";
  const auto report = forcing_lab::checks::run_selftest(options, std::cout);
  std::cout << (report.exit_code == 0 ? "selftest passed" : "selftest FAILED") << "\n";
  if (!flags.out.empty()) {
    json doc = report.body;
    doc["wall_time_ms"] = report.wall_time_ms;
    if (!write_text(flags.out, doc.dump(2))) {
      spdlog::error("cannot write {}", flags.out);
      return 1;
    }
  }
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Exact finite-horizon machinery for measure-algebra forcing arguments"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", flags.out, "write the JSON report here instead of stdout");
    sub->add_option("--seed", flags.seed, "64-bit seed; overrides the scenario's");
  };

  std::string chosen;
  for (auto kind : forcing_lab::scenario_kinds()) {
    const std::string name(kind);
    auto* sub = app.add_subcommand(name, "run a scenario of kind " + name);
    sub->add_option("--input", flags.input, "scenario file, or - for stdin")->required();
    add_common(sub);
    sub->add_option("--retry-cap", flags.retry_cap, "sampling attempts per top-level string");
    sub->add_option("--exhaustive-cap", flags.exhaustive_cap, "largest map count enumerated exhaustively");
    sub->callback([&, name] { chosen = name; });
  }
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite and bundled fixtures");
  selftest->add_option("--input", flags.input, "fixture file replacing the bundled fixtures");
  add_common(selftest);
  selftest->add_option("--only", flags.only, "run only 'criteria' or 'fixtures'")
      ->check(CLI::IsMember({"criteria", "fixtures"}));
  selftest->callback([&] { chosen = "selftest"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (chosen == "selftest") return run_selftest(flags);
  return run_kind(chosen, flags);
}
