#include "forcing_lab/checks/generators.hpp"

#include <algorithm>

namespace forcing_lab::checks {

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return v % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

BinaryString Rng::string(int length) {
  std::uint64_t bits = length == 0 ? 0 : (next() >> (64 - length));
  return BinaryString::from_index(bits, length);
}

ClopenSet random_clopen(Rng& rng, int max_depth) {
  const auto count = rng.between(0, 10);
  std::vector<BinaryString> gens;
  for (std::int64_t i = 0; i < count; ++i) {
    // Short generators are rare so most sets are proper subsets.
    int length = rng.below(16) == 0 ? static_cast<int>(rng.between(0, 2))
                                    : static_cast<int>(rng.between(1, max_depth));
    gens.push_back(rng.string(length));
  }
  return ClopenSet::canonicalize(std::move(gens));
}

ClopenPlaneSet random_plane(Rng& rng, PlaneResolution resolution) {
  std::vector<std::pair<BinaryString, BinaryString>> rects;
  const auto count = rng.between(0, 6);
  for (std::int64_t i = 0; i < count; ++i) {
    rects.emplace_back(rng.string(static_cast<int>(rng.between(0, resolution.x))),
                       rng.string(static_cast<int>(rng.between(0, resolution.y))));
  }
  return ClopenPlaneSet::from_rects_at(resolution, rects);
}

LabeledPartition random_partition(Rng& rng, int depth, std::uint64_t labels) {
  std::vector<std::vector<BinaryString>> pieces(labels);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << depth); ++x) {
    // Geometric-ish skew: label = number of leading heads, capped.
    std::uint64_t label = 0;
    while (label + 1 < labels && rng.coin()) ++label;
    if (rng.below(4) == 0) label = rng.below(labels);
    pieces[label].push_back(BinaryString::from_index(x, depth));
  }
  LabeledPartition cells;
  for (std::uint64_t k = 0; k < labels; ++k) {
    if (pieces[k].empty() && rng.coin()) continue;
    cells.push_back({k, ClopenSet::canonicalize(std::move(pieces[k]))});
  }
  return cells;
}

FiniteName random_name(Rng& rng, std::size_t horizon, int max_depth) {
  std::vector<LabeledPartition> coords;
  for (std::size_t n = 0; n < horizon; ++n) {
    int depth = static_cast<int>(rng.between(0, max_depth));
    auto labels = static_cast<std::uint64_t>(rng.between(1, 2 + static_cast<std::int64_t>(4 * (n + 1))));
    coords.push_back(random_partition(rng, depth, labels));
  }
  return make_name(std::move(coords));
}

Stem random_stem(Rng& rng, int depth, int max_root, int max_growth) {
  std::vector<std::vector<BinaryString>> levels;
  levels.push_back({rng.string(static_cast<int>(rng.between(0, max_root)))});
  for (int d = 1; d <= depth; ++d) {
    std::vector<BinaryString> level(std::size_t{1} << d);
    for (std::size_t x = 0; x < level.size(); ++x) {
      const BinaryString& parent = levels.back()[x >> 1];
      level[x] = parent.concat(rng.string(static_cast<int>(rng.between(0, max_growth))));
    }
    levels.push_back(std::move(level));
  }
  return Stem::from_levels(std::move(levels));
}

WeightFunction random_weight(Rng& rng, PlaneResolution resolution) {
  const int bits = resolution.x + resolution.y;
  std::vector<Rational> table(std::size_t{1} << bits);
  bool positive = false;
  for (auto& v : table) {
    auto k = rng.between(0, 8);
    positive = positive || k > 0;
    v = Rational(k, 8).scaled_pow2(-bits);
  }
  if (!positive) table[rng.below(table.size())] = Rational::pow2(-bits);
  return WeightFunction::from_table(resolution, std::move(table));
}

Condition random_condition(Rng& rng, const ConditionShape& shape) {
  for (;;) {
    Condition p;
    const int m = static_cast<int>(rng.between(0, shape.max_depth));
    const int budget = std::max(0, 4 - m);
    const int root = static_cast<int>(rng.between(0, std::min(1, budget)));
    const int growth = m == 0 ? 0 : std::max(0, (budget - root) / m);
    p.h = random_stem(rng, m, root, growth);
    const auto n = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(shape.max_weights)));
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      PlaneResolution r{static_cast<int>(rng.between(0, shape.max_resolution)),
                        static_cast<int>(rng.between(0, shape.max_resolution))};
      WeightFunction phi = random_weight(rng, r);
      Rational sc = score(p.h, phi);
      // epsilon = score * f with f in {1/8, ..., 4/8}.
      Rational eps = sc * Rational(rng.between(1, 4), 8);
      if (eps.is_zero() || sc - eps < shape.min_slack) {
        ok = false;
        break;
      }
      p.u.push_back(make_tagged(eps, std::move(phi)));
    }
    if (ok) return p;
  }
}

}  // namespace forcing_lab::checks
