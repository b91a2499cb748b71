#include "forcing_lab/name_calculus.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "forcing_lab/error.hpp"

namespace forcing_lab {

void check_partition(std::span<const NameCell> cells, std::size_t coordinate) {
  const std::string where = "coordinate " + std::to_string(coordinate);
  std::set<std::uint64_t> labels;
  std::vector<std::pair<BinaryString, std::uint64_t>> all;
  for (const auto& cell : cells) {
    if (!labels.insert(cell.label).second) {
      throw Error(ErrorKind::NotAPartition,
                  where + ": duplicate label " + std::to_string(cell.label));
    }
    for (const auto& g : cell.value.generators()) all.emplace_back(g, cell.label);
  }
  // Sorted generators with a prefix before its extensions: two cells meet
  // iff some adjacent pair is comparable.
  std::sort(all.begin(), all.end());
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i - 1].first.is_prefix_of(all[i].first)) {
      throw Error(ErrorKind::NotAPartition, where + ": cells " + std::to_string(all[i - 1].second) +
                                                " and " + std::to_string(all[i].second) + " overlap");
    }
  }
  Rational covered;
  for (const auto& cell : cells) covered += cell.value.measure();
  if (covered != Rational(1)) {
    throw Error(ErrorKind::NotAPartition,
                where + ": cells cover measure " + covered.to_string() + ", not 1");
  }
}

const LabeledPartition& FiniteName::coordinate(std::size_t n) const {
  if (n >= coords_.size()) {
    throw Error(ErrorKind::HorizonExceeded, "coordinate " + std::to_string(n) +
                                                " beyond horizon " + std::to_string(coords_.size()));
  }
  return coords_[n];
}

FiniteName make_name(std::vector<LabeledPartition> coords) {
  for (std::size_t n = 0; n < coords.size(); ++n) check_partition(coords[n], n);
  FiniteName name;
  name.coords_ = std::move(coords);
  return name;
}

ClopenSet boolean_value(const FiniteName& g, std::size_t n, std::uint64_t k) {
  for (const auto& cell : g.coordinate(n)) {
    if (cell.label == k) return cell.value;
  }
  return {};
}

Slalom::Slalom(std::vector<std::set<std::uint64_t>> slots) : slots_(std::move(slots)) {
  for (std::size_t n = 0; n < slots_.size(); ++n) {
    if (slots_[n].size() > (n + 1) * (n + 1)) {
      throw Error(ErrorKind::PreconditionFailed,
                  "slot " + std::to_string(n) + " holds " + std::to_string(slots_[n].size()) +
                      " values, more than (n+1)^2");
    }
  }
}

Rational slalom_threshold(std::size_t n) {
  auto m = static_cast<std::int64_t>(n + 1);
  return Rational(1, m * m);
}

Slalom slalom_extract(const FiniteName& g) {
  std::vector<std::set<std::uint64_t>> slots(g.horizon());
  for (std::size_t n = 0; n < g.horizon(); ++n) {
    slots[n] = heavy_values(g.coordinate(n), slalom_threshold(n));
  }
  return Slalom(std::move(slots));
}

std::size_t tail_index(const Rational& mu, std::size_t N) {
  if (mu.sign() <= 0) {
    throw Error(ErrorKind::EmptyCondition, "condition has measure zero");
  }
  // 1/(n-1) < mu  <=>  n > 1 + 1/mu.
  std::int64_t bound = (Rational(1) + mu.reciprocal()).floor() + 1;
  std::size_t lower = std::max<std::size_t>(N, 1) + 1;
  return std::max(lower, static_cast<std::size_t>(bound));
}

Refinement refine_condition(const ClopenSet& p, const FiniteName& g,
                            std::span<const std::uint64_t> f, std::size_t N) {
  const Rational mu = p.measure();
  if (mu.is_zero()) {
    throw Error(ErrorKind::EmptyCondition, "condition has measure zero");
  }
  if (f.size() < g.horizon()) {
    throw Error(ErrorKind::HorizonExceeded, "f shorter than the name's horizon");
  }
  const Slalom slalom = slalom_extract(g);
  for (std::size_t k = N; k < g.horizon(); ++k) {
    if (slalom.contains(k, f[k])) {
      throw Error(ErrorKind::SlalomViolation,
                  "f(" + std::to_string(k) + ") = " + std::to_string(f[k]) + " lies in S(" +
                      std::to_string(k) + ")");
    }
  }
  const std::size_t n = tail_index(mu, N);
  if (n >= g.horizon()) {
    throw Error(ErrorKind::HorizonExceeded, "tail index " + std::to_string(n) +
                                                " not below horizon " + std::to_string(g.horizon()));
  }
  ClopenSet removed;
  Rational bound = mu;
  for (std::size_t k = n; k < g.horizon(); ++k) {
    removed = removed.union_with(boolean_value(g, k, f[k]));
    bound -= slalom_threshold(k);
  }
  return Refinement{p.difference(removed), n, bound};
}

std::set<std::uint64_t> heavy_values(std::span<const NameCell> cells, const Rational& threshold) {
  if (threshold.sign() <= 0) {
    throw Error(ErrorKind::NonpositiveThreshold, "threshold " + threshold.to_string());
  }
  check_partition(cells, 0);
  std::set<std::uint64_t> out;
  for (const auto& cell : cells) {
    if (cell.value.measure() > threshold) out.insert(cell.label);
  }
  return out;
}

bool eventually_different(std::span<const std::uint64_t> f, std::span<const std::uint64_t> g,
                          std::size_t from) {
  if (f.size() != g.size() || from >= f.size()) {
    throw Error(ErrorKind::HorizonExceeded, "sequences of unequal length or start past horizon");
  }
  for (std::size_t n = from; n < f.size(); ++n) {
    if (f[n] == g[n]) return false;
  }
  return true;
}

std::set<std::size_t> infinitely_equal_hits(std::span<const std::uint64_t> f, const Slalom& s) {
  std::set<std::size_t> hits;
  std::size_t horizon = std::min(f.size(), s.horizon());
  for (std::size_t n = 0; n < horizon; ++n) {
    if (s.contains(n, f[n])) hits.insert(n);
  }
  return hits;
}

}  // namespace forcing_lab
