#include <fstream>
#include <sstream>

#include "support.hpp"

#include "forcing_lab/checks/generators.hpp"
#include "forcing_lab/json_io.hpp"
#include "forcing_lab/scenario.hpp"

using namespace forcing_lab;
using namespace forcing_lab::test;
using nlohmann::json;

namespace io = forcing_lab::json_io;

TEST_CASE("rationals and strings") {
  CHECK(io::encode(q("2/4")) == json("1/2"));
  CHECK(io::encode(Rational(3)) == json("3/1"));
  CHECK(io::decode_rational(json("-3/9")) == q("-1/3"));
  CHECK(io::decode_rational(json(5)) == Rational(5));
  CHECK(error_kind([] { io::decode_rational(json(0.5)); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { io::decode_rational(json("1/0")); }) == ErrorKind::ParseError);
  CHECK(io::decode_string(json("0110")) == bs("0110"));
  CHECK(error_kind([] { io::decode_string(json("012")); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { io::decode_string(json(1)); }) == ErrorKind::ParseError);
}

TEST_CASE("random values round trip") {
  checks::Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    const auto set = checks::random_clopen(rng, 6);
    CHECK(io::decode_clopen(io::encode(set)) == set);

    const auto plane = checks::random_plane(rng, {static_cast<int>(rng.between(0, 3)), static_cast<int>(rng.between(0, 3))});
    const auto back = io::decode_plane(io::encode(plane));
    CHECK(back == plane);
    CHECK(back.resolution() == plane.resolution());

    const auto name = checks::random_name(rng, 4, 4);
    CHECK(io::encode(io::decode_name(io::encode(name))) == io::encode(name));

    const auto phi = checks::random_weight(rng, {static_cast<int>(rng.between(0, 2)), static_cast<int>(rng.between(0, 2))});
    CHECK(io::decode_weight(io::encode(phi)) == phi);

    const auto p = checks::random_condition(rng, {});
    const auto again = io::decode_condition(io::encode(p));
    CHECK(again.h == p.h);
    CHECK(again.u == p.u);
  }
}

TEST_CASE("malformed documents are parse errors") {
  CHECK(error_kind([] { io::decode_clopen(json("0")); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { io::decode_plane(json::object()); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { io::decode_plane(json{{"rects", {{"0"}}}}); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { io::decode_condition(json{{"m", 2}}); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { io::decode_natural_set(json{1, -2}); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { io::decode_interval(json{"1/2"}); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { io::decode_name(json{{"horizon", 3}, {"coords", json::array({json::array({{{"label", 0}, {"cells", {""}}}})})}}); }) ==
        ErrorKind::ParseError);

  auto a = io::encode(DiagramAssignment::constant(CardinalLabel::aleph(1)));
  CHECK(io::decode_assignment(a) == DiagramAssignment::constant(CardinalLabel::aleph(1)));
  a.erase("b");
  CHECK(error_kind([&] { io::decode_assignment(a); }) == ErrorKind::ParseError);
  a["b"] = "aleph_1";
  a["e"] = "aleph_1";
  CHECK(error_kind([&] { io::decode_assignment(a); }) == ErrorKind::ParseError);
}

TEST_CASE("scenario envelope") {
  CHECK(run_scenario_text("{").exit_code == ExitCode::SchemaError);
  CHECK(run_scenario(json{{"version", 2}, {"kind", "slalom"}, {"params", json::object()}}).exit_code ==
        ExitCode::SchemaError);
  CHECK(run_scenario(json{{"version", 1}, {"kind", "nope"}, {"params", json::object()}}).exit_code ==
        ExitCode::SchemaError);
  CHECK(kind_needs_seed("extend"));
  CHECK(kind_needs_seed("generic-run"));
  CHECK_FALSE(kind_needs_seed("diagram"));

  const json diagram = {{"version", 1},
                        {"kind", "diagram"},
                        {"params", {{"assignment", io::encode(DiagramAssignment::constant(CardinalLabel::aleph(1)))}}}};
  const auto ok = run_scenario(diagram);
  CHECK(ok.exit_code == ExitCode::Ok);
  CHECK(ok.body["status"] == "ok");
  CHECK(ok.document().contains("wall_time_ms"));
  CHECK(run_scenario(diagram, {}, std::string_view("slalom")).exit_code == ExitCode::SchemaError);

  json extra = diagram;
  extra["params"]["unexpected"] = 1;
  CHECK(run_scenario(extra).exit_code == ExitCode::SchemaError);
}

TEST_CASE("bundled scenarios are deterministic") {
  for (const char* file : {"refine.json", "extend.json", "generic_run.json", "smz.json", "rapid_cubes.json"}) {
    std::ifstream in(std::string(FORCING_LAB_SOURCE_DIR) + "/scenarios/" + file);
    REQUIRE(in);
    std::stringstream text;
    text << in.rdbuf();
    const auto first = run_scenario_text(text.str());
    const auto second = run_scenario_text(text.str());
    CAPTURE(file);
    CHECK(first.exit_code == ExitCode::Ok);
    CHECK(first.body == second.body);
  }
}
