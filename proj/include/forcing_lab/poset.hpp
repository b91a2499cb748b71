#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forcing_lab/binary_string.hpp"
#include "forcing_lab/clopen.hpp"
#include "forcing_lab/rational.hpp"

namespace forcing_lab {

// A weight function given by a flat table at resolution (M1, M2) and
// extended to all pairs of strings: sums over extensions above the
// resolution, uniform halving per extra bit below it. The extension is
// additive in each coordinate and capped by 2^-(|s|+|t|).
class WeightFunction {
 public:
  static constexpr int kMaxResolutionBits = 16;

  // Throws InvalidWeight on a bad table size, an entry outside
  // [0, 2^-(M1+M2)], or zero total mass.
  static WeightFunction from_table(PlaneResolution resolution, std::vector<Rational> table);
  // Table constantly 2^-(M1+M2): eval(s,t) = 2^-(|s|+|t|).
  static WeightFunction full(PlaneResolution resolution = {});

  PlaneResolution resolution() const { return resolution_; }
  const std::vector<Rational>& table() const { return levels_.back(); }
  Rational total_mass() const { return levels_.front().front(); }

  Rational eval(const BinaryString& s, const BinaryString& t) const;
  // Sum of the table over the block of cells extending (a, b), where a has
  // x_bits bits and b has y_bits bits (x_bits <= M1, y_bits <= M2).
  const Rational& block(int x_bits, int y_bits, std::uint64_t a, std::uint64_t b) const;

  friend bool operator==(const WeightFunction& a, const WeightFunction& b) {
    return a.resolution_ == b.resolution_ && a.table() == b.table();
  }

 private:
  WeightFunction() = default;
  void build_levels(std::vector<Rational> table);
  std::size_t level_index(int x_bits, int y_bits) const {
    return static_cast<std::size_t>(x_bits * (resolution_.y + 1) + y_bits);
  }

  PlaneResolution resolution_;
  // levels_[level_index(i, j)] holds block sums at resolution (i, j);
  // front() is (0,0), back() is the table itself.
  std::vector<std::vector<Rational>> levels_;
};

Rational eval_phi(const WeightFunction& phi, const BinaryString& s, const BinaryString& t);

// phi_F(s,t) = mu([s] x [t] intersected with F). Throws NullSet if mu(F) = 0.
WeightFunction phi_from_clopen(const ClopenPlaneSet& f);

struct TaggedWeight {
  Rational epsilon;
  std::shared_ptr<const WeightFunction> phi;

  friend bool operator==(const TaggedWeight& a, const TaggedWeight& b) {
    return a.epsilon == b.epsilon && *a.phi == *b.phi;
  }
};

TaggedWeight make_tagged(Rational epsilon, WeightFunction phi);

// The string map h of a condition, stored level by level on 2^{<=m}.
class Stem {
 public:
  static constexpr int kMaxDepth = 22;

  Stem();  // depth 0, h(empty) = empty
  static Stem from_levels(std::vector<std::vector<BinaryString>> levels);
  // Requires every string of length <= m exactly once.
  static Stem from_pairs(std::span<const std::pair<BinaryString, BinaryString>> pairs);

  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<BinaryString>& level(int d) const { return levels_.at(static_cast<std::size_t>(d)); }
  const std::vector<BinaryString>& top() const { return levels_.back(); }
  const BinaryString& at(const BinaryString& s) const;
  std::vector<std::pair<BinaryString, BinaryString>> pairs() const;

  // This stem agrees with `smaller` on 2^{<= smaller.depth()}.
  bool extends(const Stem& smaller) const;

  friend bool operator==(const Stem&, const Stem&) = default;

 private:
  std::vector<std::vector<BinaryString>> levels_;
};

struct Condition {
  Stem h;
  std::vector<TaggedWeight> u;

  int depth() const { return h.depth(); }
};

// Sum over s in 2^m of 2^{|h(s)|} * phi(s, h(s)).
Rational score(const Stem& h, const WeightFunction& phi);

struct ConditionVerdict {
  bool valid = true;
  std::string clause;  // "epsilon-range", "monotonicity" or "score"
  std::string detail;
  std::optional<std::size_t> weight_index;
  std::vector<std::string> witness;
};

ConditionVerdict validate(const Condition& p);

// q >= p: q's stem extends p's and q's constraints include p's.
bool stronger_or_equal(const Condition& q, const Condition& p);

enum class DepthRule {
  // m' = least m' > m with 2^-m' / delta^2 < 1/(2n); sampling first.
  Chebyshev,
  // Least m' > m for which an exhaustive search finds a map e for every
  // s, falling back to the Chebyshev depth.
  Shallowest,
};

struct ExtendOptions {
  std::uint64_t seed = 0;
  std::uint64_t retry_cap = 64;
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 20;
  DepthRule rule = DepthRule::Chebyshev;
  int max_depth = Stem::kMaxDepth;
};

struct ExtendStats {
  int from_depth = 0;
  int to_depth = 0;
  int chebyshev_depth = 0;
  Rational delta;
  // Samples drawn per s in 2^m (0 where exhaustive search alone was used).
  std::vector<std::uint64_t> samples;
  std::size_t exhaustive_searches = 0;

  double mean_samples() const;
};

struct ExtendResult {
  Condition condition;
  ExtendStats stats;
};

// min over u of (score - epsilon) / (2 * sum_{s in 2^m} 2^{1+|h(s)|}).
Rational extension_delta(const Condition& p);
// Least m' > m with 2^{m'} * delta^2 > 2n.
int chebyshev_depth(int m, const Rational& delta, std::size_t n);

// Y_phi(e) > phi(s, h(s))/2 - delta for the weight u[weight_index], where
// bit w of `e` is the value at the w-th extension of s of length
// target_depth.
bool satisfies_otimes(const Condition& p, const BinaryString& s, int target_depth,
                      std::span<const std::uint64_t> e, const Rational& delta,
                      std::size_t weight_index);

ExtendResult extend(const Condition& p, const ExtendOptions& options = {});

Condition attach_weight(const Condition& p, const Rational& epsilon, const WeightFunction& phi);
// Attaches <1 - epsilon, phi_F> with F the complement of the cover.
Condition avoid_null(const Condition& p, const ClopenPlaneSet& cover, const Rational& epsilon);

struct Certificate {
  Rational inside;  // mu of the union of [s], s in 2^m, with [s] x [h(s)] inside F
  Rational score;   // score(h, phi_F), 0 when F is empty
};

Certificate certificate(const Condition& p, const ClopenPlaneSet& f);

struct ScheduledCover {
  std::size_t at_step = 0;  // attached before the extension with this index
  ClopenPlaneSet cover;
  Rational epsilon;
};

struct CertificateRecord {
  std::size_t index = 0;
  Rational inside;
  Rational score;
  Rational threshold;  // 1 - epsilon
};

struct TraceEntry {
  std::size_t step = 0;
  std::string action;  // "attach" or "extend"
  int depth = 0;
  std::vector<CertificateRecord> certificates;
};

struct GenericRunOptions {
  std::uint64_t seed = 0;
  std::uint64_t retry_cap = 64;
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 20;
  DepthRule rule = DepthRule::Shallowest;
  int max_depth = Stem::kMaxDepth;
};

struct GenericRunResult {
  Condition final_condition;
  std::vector<TraceEntry> trace;
  std::uint64_t seed = 0;
  // Every certificate score stayed strictly above its threshold.
  bool invariant_held = true;
};

GenericRunResult generic_run(std::span<const ScheduledCover> schedule, std::size_t steps,
                             const GenericRunOptions& options = {});

struct CenteredIndex {
  std::size_t n = 0;
  std::int64_t k = 1;
  Stem h;
  std::vector<Rational> epsilons;

  friend bool operator==(const CenteredIndex&, const CenteredIndex&) = default;
};

CenteredIndex sigma_centered_index(const Condition& p);

// <h, u1 union u2> for two conditions sharing the stem h.
Condition merge_centered(const Condition& a, const Condition& b);

}  // namespace forcing_lab
