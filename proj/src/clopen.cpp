#include "forcing_lab/clopen.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "forcing_lab/error.hpp"

namespace forcing_lab {

// ---------------------------------------------------------------- ClopenSet

ClopenSet ClopenSet::canonicalize(std::vector<BinaryString> generators) {
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

  // Prefix absorption: in lexicographic order an absorbing prefix comes
  // immediately before the run of its extensions.
  std::vector<BinaryString> antichain;
  antichain.reserve(generators.size());
  for (const auto& g : generators) {
    if (!antichain.empty() && antichain.back().is_prefix_of(g)) continue;
    antichain.push_back(g);
  }

  // Sibling merging, deepest level first; a merged parent can only meet its
  // own sibling on the next level up.
  int max_len = 0;
  for (const auto& g : antichain) max_len = std::max(max_len, g.length());
  std::vector<std::set<std::uint64_t>> levels(static_cast<std::size_t>(max_len) + 1);
  for (const auto& g : antichain) levels[static_cast<std::size_t>(g.length())].insert(g.index());
  for (int len = max_len; len >= 1; --len) {
    auto& level = levels[static_cast<std::size_t>(len)];
    for (auto it = level.begin(); it != level.end();) {
      std::uint64_t v = *it;
      if ((v & 1U) == 0) {
        auto next = std::next(it);
        if (next != level.end() && *next == (v | 1U)) {
          levels[static_cast<std::size_t>(len - 1)].insert(v >> 1);
          it = level.erase(it);
          it = level.erase(it);
          continue;
        }
      }
      ++it;
    }
  }

  ClopenSet out;
  for (int len = 0; len <= max_len; ++len) {
    for (std::uint64_t v : levels[static_cast<std::size_t>(len)]) {
      out.generators_.push_back(BinaryString::from_index(v, len));
    }
  }
  std::sort(out.generators_.begin(), out.generators_.end());
  return out;
}

int ClopenSet::depth() const {
  int d = 0;
  for (const auto& g : generators_) d = std::max(d, g.length());
  return d;
}

Rational ClopenSet::measure() const {
  const int d = depth();
  if (d <= 62) {
    // An antichain has measure at most 1, so the count fits in 2^d.
    std::uint64_t count = 0;
    for (const auto& g : generators_) count += std::uint64_t{1} << (d - g.length());
    return Rational(static_cast<std::int64_t>(count)).scaled_pow2(-d);
  }
  Rational total;
  for (const auto& g : generators_) total += Rational::pow2(-g.length());
  return total;
}

bool ClopenSet::contains_cylinder(const BinaryString& s) const {
  auto it = std::upper_bound(generators_.begin(), generators_.end(), s);
  // The only generator that can be a prefix of s is the greatest one <= s.
  return it != generators_.begin() && std::prev(it)->is_prefix_of(s);
}

bool ClopenSet::meets_cylinder(const BinaryString& s) const {
  if (contains_cylinder(s)) return true;
  auto it = std::lower_bound(generators_.begin(), generators_.end(), s);
  return it != generators_.end() && s.is_prefix_of(*it);
}

ClopenSet ClopenSet::union_with(const ClopenSet& other) const {
  std::vector<BinaryString> all = generators_;
  all.insert(all.end(), other.generators_.begin(), other.generators_.end());
  return canonicalize(std::move(all));
}

ClopenSet ClopenSet::intersect(const ClopenSet& other) const {
  std::vector<BinaryString> out;
  auto a = generators_.begin();
  auto b = other.generators_.begin();
  while (a != generators_.end() && b != other.generators_.end()) {
    if (a->is_prefix_of(*b)) {
      out.push_back(*b++);
    } else if (b->is_prefix_of(*a)) {
      out.push_back(*a++);
    } else if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return canonicalize(std::move(out));
}

namespace {

void complement_range(const BinaryString& prefix,
                      std::vector<BinaryString>::const_iterator lo,
                      std::vector<BinaryString>::const_iterator hi,
                      std::vector<BinaryString>& out) {
  if (lo == hi) {
    out.push_back(prefix);
    return;
  }
  if (*lo == prefix) return;  // antichain: prefix itself covers the range
  BinaryString right = prefix.child(1);
  auto mid = std::lower_bound(lo, hi, right);
  complement_range(prefix.child(0), lo, mid, out);
  complement_range(right, mid, hi, out);
}

}  // namespace

ClopenSet ClopenSet::complement() const {
  std::vector<BinaryString> out;
  complement_range(BinaryString{}, generators_.begin(), generators_.end(), out);
  return canonicalize(std::move(out));
}

ClopenSet ClopenSet::difference(const ClopenSet& other) const {
  return intersect(other.complement());
}

Rational measure(const ClopenSet& set) { return set.measure(); }

// ----------------------------------------------------------- ClopenPlaneSet

namespace {

void check_resolution(PlaneResolution r) {
  if (r.x < 0 || r.y < 0 || r.x + r.y > ClopenPlaneSet::kMaxResolutionBits) {
    throw Error(ErrorKind::CapacityExceeded,
                "plane resolution (" + std::to_string(r.x) + "," + std::to_string(r.y) +
                    ") exceeds " + std::to_string(ClopenPlaneSet::kMaxResolutionBits) + " bits");
  }
}

// Index range [lo, hi) at `resolution` bits covered by the cylinder [s].
std::pair<std::uint64_t, std::uint64_t> covered_range(const BinaryString& s, int resolution) {
  if (s.length() >= resolution) {
    std::uint64_t v = s.prefix(resolution).index();
    return {v, v + 1};
  }
  int free = resolution - s.length();
  std::uint64_t lo = s.index() << free;
  return {lo, lo + (std::uint64_t{1} << free)};
}

}  // namespace

ClopenPlaneSet ClopenPlaneSet::from_rects(
    std::span<const std::pair<BinaryString, BinaryString>> rects) {
  PlaneResolution r;
  for (const auto& [s, t] : rects) {
    r.x = std::max(r.x, s.length());
    r.y = std::max(r.y, t.length());
  }
  return from_rects_at(r, rects);
}

ClopenPlaneSet ClopenPlaneSet::from_rects_at(
    PlaneResolution resolution, std::span<const std::pair<BinaryString, BinaryString>> rects) {
  check_resolution(resolution);
  std::vector<std::uint64_t> cells;
  for (const auto& [s, t] : rects) {
    if (s.length() > resolution.x || t.length() > resolution.y) {
      throw Error(ErrorKind::ResolutionTooCoarse, "rectangle deeper than the requested resolution");
    }
    auto [xlo, xhi] = covered_range(s, resolution.x);
    auto [ylo, yhi] = covered_range(t, resolution.y);
    for (std::uint64_t x = xlo; x < xhi; ++x) {
      for (std::uint64_t y = ylo; y < yhi; ++y) {
        cells.push_back((x << resolution.y) | y);
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return ClopenPlaneSet(resolution, std::move(cells));
}

ClopenPlaneSet ClopenPlaneSet::rectangle(const BinaryString& s, const BinaryString& t) {
  std::pair<BinaryString, BinaryString> rect{s, t};
  return from_rects(std::span(&rect, 1));
}

ClopenPlaneSet ClopenPlaneSet::full(PlaneResolution resolution) {
  check_resolution(resolution);
  std::vector<std::uint64_t> cells(std::size_t{1} << (resolution.x + resolution.y));
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
  return ClopenPlaneSet(resolution, std::move(cells));
}

ClopenPlaneSet ClopenPlaneSet::empty_set(PlaneResolution resolution) {
  check_resolution(resolution);
  return ClopenPlaneSet(resolution, {});
}

bool ClopenPlaneSet::contains_cell(std::uint64_t x, std::uint64_t y) const {
  return std::binary_search(cells_.begin(), cells_.end(), encode(x, y));
}

std::vector<std::pair<BinaryString, BinaryString>> ClopenPlaneSet::rects() const {
  std::vector<std::pair<BinaryString, BinaryString>> out;
  out.reserve(cells_.size());
  std::uint64_t ymask = (std::uint64_t{1} << resolution_.y) - 1;
  for (std::uint64_t c : cells_) {
    out.emplace_back(BinaryString::from_index(c >> resolution_.y, resolution_.x),
                     BinaryString::from_index(c & ymask, resolution_.y));
  }
  return out;
}

Rational ClopenPlaneSet::measure() const {
  return Rational(static_cast<std::int64_t>(cells_.size())).scaled_pow2(-(resolution_.x + resolution_.y));
}

ClopenPlaneSet ClopenPlaneSet::refine_to(PlaneResolution target) const {
  if (target.x < resolution_.x || target.y < resolution_.y) {
    throw Error(ErrorKind::ResolutionTooCoarse, "cannot coarsen a plane set by refinement");
  }
  if (target == resolution_) return *this;
  check_resolution(target);
  int dx = target.x - resolution_.x;
  int dy = target.y - resolution_.y;
  std::uint64_t ymask = (std::uint64_t{1} << resolution_.y) - 1;
  std::vector<std::uint64_t> cells;
  cells.reserve(cells_.size() << (dx + dy));
  for (std::uint64_t c : cells_) {
    std::uint64_t x = c >> resolution_.y;
    std::uint64_t y = c & ymask;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << dx); ++i) {
      for (std::uint64_t j = 0; j < (std::uint64_t{1} << dy); ++j) {
        cells.push_back(((((x << dx) | i)) << target.y) | ((y << dy) | j));
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  return ClopenPlaneSet(target, std::move(cells));
}

namespace {

PlaneResolution common(PlaneResolution a, PlaneResolution b) {
  return {std::max(a.x, b.x), std::max(a.y, b.y)};
}

}  // namespace

ClopenPlaneSet ClopenPlaneSet::union_with(const ClopenPlaneSet& other) const {
  auto r = common(resolution_, other.resolution_);
  auto a = refine_to(r);
  auto b = other.refine_to(r);
  std::vector<std::uint64_t> out;
  std::set_union(a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end(),
                 std::back_inserter(out));
  return ClopenPlaneSet(r, std::move(out));
}

ClopenPlaneSet ClopenPlaneSet::intersect(const ClopenPlaneSet& other) const {
  auto r = common(resolution_, other.resolution_);
  auto a = refine_to(r);
  auto b = other.refine_to(r);
  std::vector<std::uint64_t> out;
  std::set_intersection(a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end(),
                        std::back_inserter(out));
  return ClopenPlaneSet(r, std::move(out));
}

ClopenPlaneSet ClopenPlaneSet::complement() const {
  std::vector<std::uint64_t> out;
  std::uint64_t total = std::uint64_t{1} << (resolution_.x + resolution_.y);
  out.reserve(total - cells_.size());
  auto it = cells_.begin();
  for (std::uint64_t c = 0; c < total; ++c) {
    if (it != cells_.end() && *it == c) {
      ++it;
    } else {
      out.push_back(c);
    }
  }
  return ClopenPlaneSet(resolution_, std::move(out));
}

ClopenPlaneSet ClopenPlaneSet::difference(const ClopenPlaneSet& other) const {
  auto r = common(resolution_, other.resolution_);
  auto a = refine_to(r);
  auto b = other.refine_to(r);
  std::vector<std::uint64_t> out;
  std::set_difference(a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end(),
                      std::back_inserter(out));
  return ClopenPlaneSet(r, std::move(out));
}

bool ClopenPlaneSet::contains_rect(const BinaryString& s, const BinaryString& t) const {
  auto [xlo, xhi] = covered_range(s, resolution_.x);
  auto [ylo, yhi] = covered_range(t, resolution_.y);
  for (std::uint64_t x = xlo; x < xhi; ++x) {
    auto lo = std::lower_bound(cells_.begin(), cells_.end(), encode(x, ylo));
    auto hi = std::lower_bound(lo, cells_.end(), encode(x, yhi - 1) + 1);
    if (static_cast<std::uint64_t>(hi - lo) != yhi - ylo) return false;
  }
  return true;
}

bool ClopenPlaneSet::meets_rect(const BinaryString& s, const BinaryString& t) const {
  auto [xlo, xhi] = covered_range(s, resolution_.x);
  auto [ylo, yhi] = covered_range(t, resolution_.y);
  for (std::uint64_t x = xlo; x < xhi; ++x) {
    auto lo = std::lower_bound(cells_.begin(), cells_.end(), encode(x, ylo));
    if (lo != cells_.end() && *lo <= encode(x, yhi - 1)) return true;
  }
  return false;
}

ClopenSet ClopenPlaneSet::section_x(const BinaryString& s) const {
  if (s.length() < resolution_.x) {
    throw Error(ErrorKind::ResolutionTooCoarse,
                "section at |s|=" + std::to_string(s.length()) + " below x-resolution " +
                    std::to_string(resolution_.x));
  }
  std::uint64_t x = s.prefix(resolution_.x).index();
  std::uint64_t ymask = (std::uint64_t{1} << resolution_.y) - 1;
  auto lo = std::lower_bound(cells_.begin(), cells_.end(), encode(x, 0));
  auto hi = std::lower_bound(lo, cells_.end(), encode(x + 1, 0));
  std::vector<BinaryString> ys;
  for (auto it = lo; it != hi; ++it) {
    ys.push_back(BinaryString::from_index(*it & ymask, resolution_.y));
  }
  return ClopenSet::canonicalize(std::move(ys));
}

bool operator==(const ClopenPlaneSet& a, const ClopenPlaneSet& b) {
  auto r = common(a.resolution_, b.resolution_);
  return a.refine_to(r).cells_ == b.refine_to(r).cells_;
}

Rational measure2(const ClopenPlaneSet& set) { return set.measure(); }

ClopenSet plane_section_x(const ClopenPlaneSet& set, const BinaryString& s) {
  return set.section_x(s);
}

}  // namespace forcing_lab
