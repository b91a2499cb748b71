#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "forcing_lab/clopen.hpp"
#include "forcing_lab/rational.hpp"

namespace forcing_lab {

// One labeled piece of a clopen partition of Cantor space: [[g(n) = label]].
struct NameCell {
  std::uint64_t label = 0;
  ClopenSet value;
  friend bool operator==(const NameCell&, const NameCell&) = default;
};

using LabeledPartition = std::vector<NameCell>;

// Throws NotAPartition unless labels are distinct, cells pairwise disjoint
// and their union is the whole space. `coordinate` only decorates messages.
void check_partition(std::span<const NameCell> cells, std::size_t coordinate);

// A measure-algebra name for a function in omega^omega, truncated to the
// first `horizon()` coordinates.
class FiniteName {
 public:
  FiniteName() = default;

  std::size_t horizon() const { return coords_.size(); }
  const LabeledPartition& coordinate(std::size_t n) const;
  const std::vector<LabeledPartition>& coordinates() const { return coords_; }

  friend FiniteName make_name(std::vector<LabeledPartition> coords);

 private:
  std::vector<LabeledPartition> coords_;
};

FiniteName make_name(std::vector<LabeledPartition> coords);

// [[g(n) = k]]; empty when k labels no cell.
ClopenSet boolean_value(const FiniteName& g, std::size_t n, std::uint64_t k);

// Finite-horizon slalom. Input slots may hold up to (n+1)^2 elements.
class Slalom {
 public:
  Slalom() = default;
  explicit Slalom(std::vector<std::set<std::uint64_t>> slots);

  std::size_t horizon() const { return slots_.size(); }
  const std::set<std::uint64_t>& slot(std::size_t n) const { return slots_.at(n); }
  const std::vector<std::set<std::uint64_t>>& slots() const { return slots_; }
  bool contains(std::size_t n, std::uint64_t k) const { return slots_.at(n).count(k) != 0; }

  friend bool operator==(const Slalom&, const Slalom&) = default;

 private:
  std::vector<std::set<std::uint64_t>> slots_;
};

// Threshold for coordinate n, 1/(n+1)^2.
Rational slalom_threshold(std::size_t n);

// S(n) = labels whose Boolean value has measure strictly above 1/(n+1)^2.
Slalom slalom_extract(const FiniteName& g);

struct Refinement {
  ClopenSet q;
  std::size_t n = 0;
  // Exact lower bound mu(p) - sum_{k=n}^{horizon-1} 1/(k+1)^2.
  Rational guaranteed_measure;
};

// Least n > max(N,1) with 1/(n-1) < mu, the closed-form majorant of the tail
// sum_{k>=n} k^-2.
std::size_t tail_index(const Rational& mu, std::size_t N);

// q = p minus the union of [[g(k) = f(k)]] for k in [n, horizon).
Refinement refine_condition(const ClopenSet& p, const FiniteName& g,
                            std::span<const std::uint64_t> f, std::size_t N);

// Labels whose cell measure strictly exceeds `threshold`. Empty cells are
// allowed in the partition.
std::set<std::uint64_t> heavy_values(std::span<const NameCell> cells, const Rational& threshold);

// f(n) != g(n) for every n in [from, horizon).
bool eventually_different(std::span<const std::uint64_t> f, std::span<const std::uint64_t> g,
                          std::size_t from);

// {n < horizon : f(n) in S(n)}.
std::set<std::size_t> infinitely_equal_hits(std::span<const std::uint64_t> f, const Slalom& s);

}  // namespace forcing_lab
