#pragma once

#include <bitset>
#include <cstdint>
#include <vector>

#include "forcing_lab/clopen.hpp"
#include "forcing_lab/diagram.hpp"
#include "forcing_lab/poset.hpp"

// Reference computations that share no code paths with the library beyond
// the value types: brute-force bitmaps, direct table sums, a literal
// transcription of the diagram.
namespace forcing_lab::checks {

inline constexpr int kBitmapDepth = 8;
using Bitmap = std::bitset<std::size_t{1} << kBitmapDepth>;

// Point x (an 8-bit word) is in the set iff some generator is a prefix of it.
Bitmap to_bitmap(const ClopenSet& set);
Rational bitmap_measure(const Bitmap& b);

// Cell (x, y) at resolution (r, r) as a flat vector of flags.
std::vector<bool> plane_bitmap(const ClopenPlaneSet& set, int r);

// phi(s, t) from the table alone: a sum over cells compatible with (s, t),
// each contributing its share 2^-(extra bits) when s or t is finer.
Rational direct_phi(const WeightFunction& phi, const BinaryString& s, const BinaryString& t);

// sum_{s in 2^m} 2^{|h(s)|} phi(s, h(s)) using direct_phi.
Rational direct_score(const Stem& h, const WeightFunction& phi);

// True iff every arrow and both identities hold, written out node by node.
bool diagram_oracle(const DiagramAssignment& a);

}  // namespace forcing_lab::checks
