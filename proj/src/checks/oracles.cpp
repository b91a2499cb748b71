#include "forcing_lab/checks/oracles.hpp"

#include <algorithm>

namespace forcing_lab::checks {

Bitmap to_bitmap(const ClopenSet& set) {
  Bitmap b;
  for (std::uint64_t x = 0; x < b.size(); ++x) {
    for (const auto& g : set.generators()) {
      if (g.length() > kBitmapDepth) continue;
      if ((x >> (kBitmapDepth - g.length())) == g.index()) {
        b.set(x);
        break;
      }
    }
  }
  return b;
}

Rational bitmap_measure(const Bitmap& b) {
  return Rational(static_cast<std::int64_t>(b.count()), static_cast<std::int64_t>(b.size()));
}

std::vector<bool> plane_bitmap(const ClopenPlaneSet& set, int r) {
  const std::uint64_t side = std::uint64_t{1} << r;
  std::vector<bool> out(side * side);
  for (const auto& [s, t] : set.rects()) {
    for (std::uint64_t x = 0; x < side; ++x) {
      if ((x >> (r - s.length())) != s.index()) continue;
      for (std::uint64_t y = 0; y < side; ++y) {
        if ((y >> (r - t.length())) == t.index()) out[x * side + y] = true;
      }
    }
  }
  return out;
}

namespace {

// Overlap weight of the cell `c` (length `res` bits) with the cylinder of
// `s`: 1 if s is a prefix of c, 2^-(|s|-res) if c is a prefix of s, else 0.
Rational overlap(std::uint64_t c, int res, const BinaryString& s) {
  if (s.length() <= res) {
    return (c >> (res - s.length())) == s.index() ? Rational(1) : Rational(0);
  }
  if ((s.index() >> (s.length() - res)) != c) return Rational(0);
  return Rational::pow2(res - s.length());
}

}  // namespace

Rational direct_phi(const WeightFunction& phi, const BinaryString& s, const BinaryString& t) {
  const auto r = phi.resolution();
  const auto& table = phi.table();
  Rational total;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << r.x); ++x) {
    Rational wx = overlap(x, r.x, s);
    if (wx.is_zero()) continue;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << r.y); ++y) {
      Rational wy = overlap(y, r.y, t);
      if (wy.is_zero()) continue;
      total += table[(x << r.y) | y] * wx * wy;
    }
  }
  return total;
}

Rational direct_score(const Stem& h, const WeightFunction& phi) {
  Rational total;
  const int m = h.depth();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
    BinaryString s = BinaryString::from_index(x, m);
    const BinaryString& hs = h.at(s);
    total += direct_phi(phi, s, hs).scaled_pow2(hs.length());
  }
  return total;
}

bool diagram_oracle(const DiagramAssignment& a) {
  auto v = [&](Node n) { return a[n].level(); };
  const int addN = v(Node::AddN), covN = v(Node::CovN), nonN = v(Node::NonN), cofN = v(Node::CofN);
  const int addM = v(Node::AddM), covM = v(Node::CovM), nonM = v(Node::NonM), cofM = v(Node::CofM);
  const int b = v(Node::B), d = v(Node::D);
  // Bottom row, left to right, then the columns.
  bool ok = addN <= addM && addM <= covM && covM <= d && d <= cofM && cofM <= cofN;
  ok = ok && addM <= b && b <= d;
  ok = ok && addN <= covN && covN <= nonM && nonM <= cofM;
  ok = ok && b <= nonM;
  ok = ok && covM <= nonN && nonN <= cofN;
  ok = ok && addM == std::min(b, covM);
  ok = ok && cofM == std::max(d, nonM);
  return ok;
}

}  // namespace forcing_lab::checks
