#include <algorithm>

#include "support.hpp"

#include "forcing_lab/checks/oracles.hpp"
#include "forcing_lab/diagram.hpp"

using namespace forcing_lab;
using namespace forcing_lab::test;

namespace {

constexpr CardinalLabel kA1 = CardinalLabel::aleph(1);
constexpr CardinalLabel kA2 = CardinalLabel::aleph(2);

DiagramAssignment from_mask(unsigned mask) {
  DiagramAssignment a;
  for (std::size_t i = 0; i < kNodeCount; ++i) a[kAllNodes[i]] = ((mask >> i) & 1U) != 0 ? kA2 : kA1;
  return a;
}

std::vector<std::string> rules(const DiagramVerdict& v) {
  std::vector<std::string> out;
  for (const auto& x : v.violations) out.push_back(x.rule);
  return out;
}

const ExtensionConstraint& find(const std::vector<ExtensionConstraint>& cs, Node node, Relation rel) {
  auto it = std::find_if(cs.begin(), cs.end(), [&](const auto& c) { return c.node == node && c.relation == rel; });
  REQUIRE(it != cs.end());
  return *it;
}

}  // namespace

TEST_CASE("cardinal labels") {
  CHECK(CardinalLabel::parse("aleph_1") == kA1);
  CHECK(CardinalLabel::parse("aleph_17").level() == 17);
  CHECK(CardinalLabel::parse("c") == CardinalLabel::continuum());
  CHECK(kA2 < CardinalLabel::continuum());
  CHECK(kA1 < kA2);
  CHECK(CardinalLabel::continuum().to_string() == "c");
  for (const char* bad : {"aleph_0", "aleph_", "aleph_x", "omega_1", "", "aleph_-1"}) {
    CHECK(error_kind([&] { CardinalLabel::parse(bad); }) == ErrorKind::ParseError);
  }
}

TEST_CASE("node names round trip") {
  for (Node n : kAllNodes) CHECK(parse_node(node_name(n)) == n);
  CHECK_FALSE(parse_node("add(X)").has_value());
  CHECK(diagram_edges().size() == 13);
}

TEST_CASE("check_assignment on the documented examples") {
  CHECK(check_assignment(DiagramAssignment::constant(kA1)).accepted);
  CHECK(check_assignment(DiagramAssignment::constant(CardinalLabel::continuum())).accepted);

  auto edge = DiagramAssignment::constant(kA2);
  edge[Node::CovN] = kA1;
  auto v = check_assignment(edge);
  CHECK_FALSE(v.accepted);
  CHECK(rules(v) == std::vector<std::string>{"add(N) <= cov(N)"});

  auto ident = DiagramAssignment::constant(kA2);
  ident[Node::AddN] = kA1;
  ident[Node::B] = kA1;
  v = check_assignment(ident);
  CHECK_FALSE(v.accepted);
  const auto r = rules(v);
  CHECK(std::find(r.begin(), r.end(), "add(M) = min{b, cov(M)}") != r.end());

  // Only the max identity is broken: d, non(M) at aleph_1 and cof(M) above them.
  auto top = DiagramAssignment::constant(kA1);
  top[Node::CofM] = kA2;
  top[Node::CofN] = kA2;
  CHECK(rules(check_assignment(top)) == std::vector<std::string>{"cof(M) = max{d, non(M)}"});
}

TEST_CASE("check_assignment matches the oracle on every two-label assignment") {
  std::size_t accepted = 0;
  for (unsigned mask = 0; mask < (1U << kNodeCount); ++mask) {
    const auto a = from_mask(mask);
    const auto v = check_assignment(a);
    CHECK(v.accepted == checks::diagram_oracle(a));
    CHECK(v.accepted == v.violations.empty());
    accepted += v.accepted ? 1 : 0;
  }
  CHECK(accepted > 2);
  CHECK(accepted < (1U << kNodeCount));
}

TEST_CASE("random-extension constraints") {
  const auto base = random_extension_constraints(DiagramAssignment::constant(kA1));
  for (const auto& c : base) CHECK(c.bound == kA1);
  CHECK(find(base, Node::CovN, Relation::AtLeast).bound == kA1);

  auto ground = DiagramAssignment::constant(kA1);
  ground[Node::B] = kA2;
  ground[Node::D] = kA2;
  ground[Node::NonM] = kA2;
  ground[Node::CofM] = kA2;
  ground[Node::CofN] = kA2;
  ground[Node::NonN] = kA2;
  REQUIRE(check_assignment(ground).accepted);
  const auto cs = random_extension_constraints(ground);
  CHECK(find(cs, Node::CovN, Relation::AtLeast).bound == kA2);
  CHECK(find(cs, Node::NonN, Relation::AtMost).bound == kA2);
  CHECK(find(cs, Node::B, Relation::Equal).bound == kA2);

  auto broken = DiagramAssignment::constant(kA1);
  broken[Node::AddN] = kA2;
  CHECK(error_kind([&] { random_extension_constraints(broken); }) == ErrorKind::InvalidGround);
}

TEST_CASE("raising a ground lower-bound source keeps every constraint at least as strong") {
  for (unsigned mask = 0; mask < (1U << kNodeCount); ++mask) {
    const auto low = from_mask(mask);
    if (!check_assignment(low).accepted) continue;
    for (Node raised : {Node::B, Node::CovN}) {
      if (low[raised] == kA2) continue;
      auto high = low;
      high[raised] = kA2;
      if (!check_assignment(high).accepted) continue;
      const auto before = random_extension_constraints(low);
      const auto after = random_extension_constraints(high);
      REQUIRE(before.size() == after.size());
      for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(before[i].node == after[i].node);
        CHECK(before[i].relation == after[i].relation);
      }
      CHECK(find(before, Node::CovN, Relation::AtLeast).bound <= find(after, Node::CovN, Relation::AtLeast).bound);
    }
  }
}

TEST_CASE("extension pairs") {
  const auto constant = DiagramAssignment::constant(kA1);
  CHECK(check_extension_pair(constant, constant).accepted);

  auto ground = DiagramAssignment::constant(kA1);
  ground[Node::CovStarN] = kA2;
  ground[Node::NonM] = kA2;
  ground[Node::CofM] = kA2;
  ground[Node::CofN] = kA2;
  auto ext = ground;
  ext[Node::CovN] = kA2;
  CHECK(check_extension_pair(ground, ext).accepted);

  auto moved_b = ext;
  moved_b[Node::B] = kA2;
  moved_b[Node::D] = kA2;
  REQUIRE(check_assignment(moved_b).accepted);
  const auto v = check_extension_pair(ground, moved_b);
  CHECK_FALSE(v.accepted);
  const auto r = rules(v);
  CHECK(std::find(r.begin(), r.end(), "b = aleph_1") != r.end());

  auto invalid = constant;
  invalid[Node::AddN] = kA2;
  const auto both = check_extension_pair(invalid, constant);
  CHECK_FALSE(both.accepted);
  CHECK(both.violations.front().rule.rfind("ground: ", 0) == 0);
}
