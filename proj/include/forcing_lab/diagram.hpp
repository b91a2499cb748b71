#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace forcing_lab {

// A symbolic cardinal: aleph_1 < aleph_2 < ... < c. Only the order matters.
class CardinalLabel {
 public:
  static constexpr int kContinuumLevel = 1 << 20;

  constexpr CardinalLabel() = default;
  static constexpr CardinalLabel aleph(int index) { return CardinalLabel(index); }
  static constexpr CardinalLabel continuum() { return CardinalLabel(kContinuumLevel); }
  // Accepts "aleph_N" (N >= 1) and "c".
  static CardinalLabel parse(std::string_view text);

  int level() const { return level_; }
  std::string to_string() const;

  friend constexpr auto operator<=>(const CardinalLabel&, const CardinalLabel&) = default;

 private:
  explicit constexpr CardinalLabel(int level) : level_(level) {}
  int level_ = 1;
};

enum class Node {
  AddN, CovN, NonN, CofN,
  AddM, CovM, NonM, CofM,
  B, D,
  CovStarN, NonStarN,
};

inline constexpr std::size_t kNodeCount = 12;
inline constexpr std::array<Node, kNodeCount> kAllNodes = {
    Node::AddN, Node::CovN, Node::NonN, Node::CofN, Node::AddM, Node::CovM,
    Node::NonM, Node::CofM, Node::B,    Node::D,    Node::CovStarN, Node::NonStarN};

std::string_view node_name(Node node);
std::optional<Node> parse_node(std::string_view name);

class DiagramAssignment {
 public:
  DiagramAssignment() = default;
  static DiagramAssignment constant(CardinalLabel label);

  CardinalLabel operator[](Node node) const { return values_[static_cast<std::size_t>(node)]; }
  CardinalLabel& operator[](Node node) { return values_[static_cast<std::size_t>(node)]; }

  friend bool operator==(const DiagramAssignment&, const DiagramAssignment&) = default;

 private:
  std::array<CardinalLabel, kNodeCount> values_{};
};

struct Edge {
  Node lower;
  Node upper;
};

// The arrows of the diagram, each read as lower <= upper.
const std::vector<Edge>& diagram_edges();

struct Violation {
  std::string rule;  // "a <= b", or one of the two identities
  std::string detail;
};

struct DiagramVerdict {
  bool accepted = true;
  std::vector<Violation> violations;
};

// Every arrow plus add(M) = min{b, cov(M)} and cof(M) = max{d, non(M)}.
DiagramVerdict check_assignment(const DiagramAssignment& a);

enum class Relation { Equal, AtLeast, AtMost };

std::string_view relation_symbol(Relation r);

struct ExtensionConstraint {
  Node node;
  Relation relation;
  CardinalLabel bound;
  std::string reason;
};

// Constraints on the invariants after adding one random real to a ground
// model with these values. Throws InvalidGround if the ground assignment
// fails check_assignment.
std::vector<ExtensionConstraint> random_extension_constraints(const DiagramAssignment& ground);

bool satisfies(const DiagramAssignment& a, const ExtensionConstraint& c);

// Both assignments are checked against the diagram, then ext against the
// constraints emitted for ground.
DiagramVerdict check_extension_pair(const DiagramAssignment& ground, const DiagramAssignment& ext);

}  // namespace forcing_lab
