#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "forcing_lab/clopen.hpp"
#include "forcing_lab/name_calculus.hpp"
#include "forcing_lab/poset.hpp"

// Seeded random instances for property tests and the acceptance suite.
// Only raw mt19937_64 output is used, so instances are identical across
// standard libraries.
namespace forcing_lab::checks {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() & 1U) != 0; }
  BinaryString string(int length);

 private:
  std::mt19937_64 engine_;
};

ClopenSet random_clopen(Rng& rng, int max_depth);
ClopenPlaneSet random_plane(Rng& rng, PlaneResolution resolution);

// Partition of Cantor space at `depth` with up to `labels` labels and a
// skew towards small labels, so some cells are heavy.
LabeledPartition random_partition(Rng& rng, int depth, std::uint64_t labels);
FiniteName random_name(Rng& rng, std::size_t horizon, int max_depth);

// Monotone stem of the given depth whose values grow by at most
// `max_growth` bits per level, starting from a root value of at most
// `max_root` bits.
Stem random_stem(Rng& rng, int depth, int max_root, int max_growth);

// Table entries are multiples of 2^-(M1+M2)/8; total mass is positive.
WeightFunction random_weight(Rng& rng, PlaneResolution resolution);

struct ConditionShape {
  int max_depth = 3;
  std::size_t max_weights = 3;
  int max_resolution = 3;
  // Each weight keeps at least this much of score - epsilon.
  Rational min_slack = Rational(1, 8);
};

// A valid condition: monotone stem with |h(s)| + m <= 4, each epsilon a
// random fraction of its score.
Condition random_condition(Rng& rng, const ConditionShape& shape);

}  // namespace forcing_lab::checks
