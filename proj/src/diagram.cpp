#include "forcing_lab/diagram.hpp"

#include <algorithm>
#include <charconv>

#include "forcing_lab/error.hpp"

namespace forcing_lab {

CardinalLabel CardinalLabel::parse(std::string_view text) {
  if (text == "c") return continuum();
  constexpr std::string_view prefix = "aleph_";
  if (text.substr(0, prefix.size()) == prefix) {
    auto digits = text.substr(prefix.size());
    int index = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && index >= 1 &&
        index < kContinuumLevel) {
      return aleph(index);
    }
  }
  throw Error(ErrorKind::ParseError, "unknown cardinal label '" + std::string(text) + "'");
}

std::string CardinalLabel::to_string() const {
  if (level_ == kContinuumLevel) return "c";
  return "aleph_" + std::to_string(level_);
}

namespace {

constexpr std::array<std::string_view, kNodeCount> kNodeNames = {
    "add(N)", "cov(N)", "non(N)", "cof(N)", "add(M)", "cov(M)",
    "non(M)", "cof(M)", "b",      "d",      "cov*(N)", "non*(N)"};

}  // namespace

std::string_view node_name(Node node) { return kNodeNames[static_cast<std::size_t>(node)]; }

std::optional<Node> parse_node(std::string_view name) {
  for (std::size_t i = 0; i < kNodeCount; ++i) {
    if (kNodeNames[i] == name) return kAllNodes[i];
  }
  return std::nullopt;
}

DiagramAssignment DiagramAssignment::constant(CardinalLabel label) {
  DiagramAssignment a;
  for (Node n : kAllNodes) a[n] = label;
  return a;
}

const std::vector<Edge>& diagram_edges() {
  static const std::vector<Edge> edges = {
      {Node::AddN, Node::AddM}, {Node::AddM, Node::CovM}, {Node::CovM, Node::D},
      {Node::D, Node::CofM},    {Node::CofM, Node::CofN}, {Node::AddM, Node::B},
      {Node::B, Node::D},       {Node::AddN, Node::CovN}, {Node::CovN, Node::NonM},
      {Node::NonM, Node::CofM}, {Node::B, Node::NonM},    {Node::CovM, Node::NonN},
      {Node::NonN, Node::CofN},
  };
  return edges;
}

DiagramVerdict check_assignment(const DiagramAssignment& a) {
  DiagramVerdict verdict;
  auto fail = [&](std::string rule, std::string detail) {
    verdict.accepted = false;
    verdict.violations.push_back({std::move(rule), std::move(detail)});
  };
  for (const Edge& e : diagram_edges()) {
    if (a[e.lower] > a[e.upper]) {
      fail(std::string(node_name(e.lower)) + " <= " + std::string(node_name(e.upper)),
           a[e.lower].to_string() + " > " + a[e.upper].to_string());
    }
  }
  CardinalLabel lo = std::min(a[Node::B], a[Node::CovM]);
  if (a[Node::AddM] != lo) {
    fail("add(M) = min{b, cov(M)}", "add(M) = " + a[Node::AddM].to_string() + ", min = " + lo.to_string());
  }
  CardinalLabel hi = std::max(a[Node::D], a[Node::NonM]);
  if (a[Node::CofM] != hi) {
    fail("cof(M) = max{d, non(M)}", "cof(M) = " + a[Node::CofM].to_string() + ", max = " + hi.to_string());
  }
  return verdict;
}

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::Equal: return "=";
    case Relation::AtLeast: return ">=";
    case Relation::AtMost: return "<=";
  }
  return "?";
}

std::vector<ExtensionConstraint> random_extension_constraints(const DiagramAssignment& ground) {
  DiagramVerdict verdict = check_assignment(ground);
  if (!verdict.accepted) {
    throw Error(ErrorKind::InvalidGround,
                "ground assignment violates " + verdict.violations.front().rule);
  }
  std::vector<ExtensionConstraint> out;
  auto keep = [&](Node n, const char* reason) {
    out.push_back({n, Relation::Equal, ground[n], reason});
  };
  keep(Node::AddN, "add(N) is preserved");
  keep(Node::CofN, "cof(N) is preserved");
  keep(Node::B, "b is preserved");
  keep(Node::D, "d is preserved");
  keep(Node::CovM, "cov(M) is preserved");
  keep(Node::NonM, "non(M) is preserved");
  keep(Node::AddM, "add(M) is preserved");
  keep(Node::CofM, "cof(M) is preserved");
  out.push_back({Node::CovN, Relation::AtLeast, std::max(ground[Node::CovN], ground[Node::B]),
                 "cov(N) >= max{cov(N), b} of the ground model"});
  out.push_back({Node::NonN, Relation::AtMost, std::min(ground[Node::NonN], ground[Node::D]),
                 "non(N) <= min{non(N), d} of the ground model"});
  out.push_back({Node::CovN, Relation::Equal, ground[Node::CovStarN],
                 "cov(N) of the extension is cov*(N) of the ground model"});
  out.push_back({Node::NonN, Relation::Equal, ground[Node::NonStarN],
                 "non(N) of the extension is non*(N) of the ground model"});
  return out;
}

bool satisfies(const DiagramAssignment& a, const ExtensionConstraint& c) {
  switch (c.relation) {
    case Relation::Equal: return a[c.node] == c.bound;
    case Relation::AtLeast: return a[c.node] >= c.bound;
    case Relation::AtMost: return a[c.node] <= c.bound;
  }
  return false;
}

DiagramVerdict check_extension_pair(const DiagramAssignment& ground, const DiagramAssignment& ext) {
  DiagramVerdict verdict;
  for (const auto& [label, assignment] : {std::pair{"ground", &ground}, std::pair{"extension", &ext}}) {
    DiagramVerdict own = check_assignment(*assignment);
    for (auto& v : own.violations) {
      verdict.accepted = false;
      verdict.violations.push_back({std::string(label) + ": " + v.rule, v.detail});
    }
  }
  if (!verdict.accepted) return verdict;
  for (const auto& c : random_extension_constraints(ground)) {
    if (!satisfies(ext, c)) {
      verdict.accepted = false;
      verdict.violations.push_back(
          {std::string(node_name(c.node)) + " " + std::string(relation_symbol(c.relation)) + " " +
               c.bound.to_string(),
           c.reason + "; extension has " + ext[c.node].to_string()});
    }
  }
  return verdict;
}

}  // namespace forcing_lab
