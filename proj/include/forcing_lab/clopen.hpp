#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "forcing_lab/binary_string.hpp"
#include "forcing_lab/rational.hpp"

namespace forcing_lab {

// A clopen subset of Cantor space as a canonical prefix antichain: no
// generator extends another and no pair of siblings s0, s1 is present.
// Every constructor canonicalizes, so equal sets have equal generators.
class ClopenSet {
 public:
  ClopenSet() = default;

  static ClopenSet canonicalize(std::vector<BinaryString> generators);
  static ClopenSet full() { return canonicalize({BinaryString{}}); }
  static ClopenSet empty_set() { return {}; }
  static ClopenSet cylinder(const BinaryString& s) { return canonicalize({s}); }

  const std::vector<BinaryString>& generators() const { return generators_; }
  bool empty() const { return generators_.empty(); }
  bool is_full() const { return generators_.size() == 1 && generators_[0].empty(); }
  // Deepest generator length (0 for the empty set and the full space).
  int depth() const;

  Rational measure() const;
  // [s] is contained in the set.
  bool contains_cylinder(const BinaryString& s) const;
  bool meets_cylinder(const BinaryString& s) const;

  ClopenSet union_with(const ClopenSet& other) const;
  ClopenSet intersect(const ClopenSet& other) const;
  ClopenSet complement() const;
  ClopenSet difference(const ClopenSet& other) const;
  bool disjoint_from(const ClopenSet& other) const { return intersect(other).empty(); }
  bool subset_of(const ClopenSet& other) const { return difference(other).empty(); }

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

 private:
  std::vector<BinaryString> generators_;  // sorted lexicographically
};

Rational measure(const ClopenSet& set);

// Resolution (x bits, y bits) of a flattened plane set.
struct PlaneResolution {
  int x = 0;
  int y = 0;
  friend bool operator==(const PlaneResolution&, const PlaneResolution&) = default;
};

// A clopen subset of the Cantor plane stored flat: every rectangle sits at
// the same resolution and is encoded as (x index << y bits) | y index.
class ClopenPlaneSet {
 public:
  // Largest x+y resolution a plane set may be refined to.
  static constexpr int kMaxResolutionBits = 24;

  ClopenPlaneSet() = default;

  // Resolution is the maximal generator length in each coordinate.
  static ClopenPlaneSet from_rects(std::span<const std::pair<BinaryString, BinaryString>> rects);
  static ClopenPlaneSet from_rects_at(PlaneResolution resolution,
                                      std::span<const std::pair<BinaryString, BinaryString>> rects);
  static ClopenPlaneSet rectangle(const BinaryString& s, const BinaryString& t);
  static ClopenPlaneSet full(PlaneResolution resolution = {});
  static ClopenPlaneSet empty_set(PlaneResolution resolution = {});

  PlaneResolution resolution() const { return resolution_; }
  const std::vector<std::uint64_t>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool contains_cell(std::uint64_t x, std::uint64_t y) const;
  std::vector<std::pair<BinaryString, BinaryString>> rects() const;

  Rational measure() const;

  ClopenPlaneSet refine_to(PlaneResolution resolution) const;
  ClopenPlaneSet union_with(const ClopenPlaneSet& other) const;
  ClopenPlaneSet intersect(const ClopenPlaneSet& other) const;
  ClopenPlaneSet complement() const;
  ClopenPlaneSet difference(const ClopenPlaneSet& other) const;

  // [s] x [t] is contained in the set.
  bool contains_rect(const BinaryString& s, const BinaryString& t) const;
  // [s] x [t] meets the set.
  bool meets_rect(const BinaryString& s, const BinaryString& t) const;

  // Vertical section above any x in [s]; requires |s| >= resolution().x.
  ClopenSet section_x(const BinaryString& s) const;

  // Same point set, regardless of stored resolution.
  friend bool operator==(const ClopenPlaneSet& a, const ClopenPlaneSet& b);

 private:
  ClopenPlaneSet(PlaneResolution resolution, std::vector<std::uint64_t> cells)
      : resolution_(resolution), cells_(std::move(cells)) {}
  std::uint64_t encode(std::uint64_t x, std::uint64_t y) const { return (x << resolution_.y) | y; }

  PlaneResolution resolution_;
  std::vector<std::uint64_t> cells_;  // sorted, unique
};

Rational measure2(const ClopenPlaneSet& set);
ClopenSet plane_section_x(const ClopenPlaneSet& set, const BinaryString& s);

}  // namespace forcing_lab
