#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "forcing_lab/rational.hpp"

namespace forcing_lab {

// Half-open interval [left, right) inside [0, 1].
class IntervalSpec {
 public:
  IntervalSpec(Rational left, Rational right);

  const Rational& left() const { return left_; }
  const Rational& right() const { return right_; }
  Rational length() const { return right_ - left_; }

  friend bool operator==(const IntervalSpec&, const IntervalSpec&) = default;
  // Orders by left endpoint, then right.
  friend bool operator<(const IntervalSpec& a, const IntervalSpec& b) {
    return a.left_ != b.left_ ? a.left_ < b.left_ : a.right_ < b.right_;
  }

 private:
  Rational left_;
  Rational right_;
};

// k-th interval [k*len, (k+1)*len) of the partition of [0,1) into pieces of
// length `len` (the last piece is cut at 1).
IntervalSpec partition_piece(const Rational& len, std::uint64_t k);
// The piece k holding the left endpoint; the interval lies inside
// piece(k) union piece(k+1) when it is no longer than `len` (required).
std::uint64_t covering_pair(const IntervalSpec& interval, const Rational& len);

struct CoverTranslation {
  std::vector<Rational> delta;        // delta_n for n < horizon
  std::vector<Rational> delta_prime;  // delta'_n for n < horizon
};

// delta_n = min over k <= n^3 of eps_k / 2; delta'_{2k} = delta'_{2k+1} is
// the largest power of two strictly below delta_{2k+1}. Needs eps defined
// up to index horizon^3.
CoverTranslation cover_translate(std::span<const Rational> eps, std::size_t horizon);

// Concatenates the families in order, each sorted by position, and checks
// |A_n| < (n+1)^2 and length(J_j) <= eps_j for every output index j.
std::vector<IntervalSpec> flatten_heavy_intervals(std::span<const std::vector<IntervalSpec>> families,
                                                  std::span<const Rational> eps);

// value(m) = |A intersect [m^2, (m+1)^2)| / (2m+1) for m < horizon.
std::vector<Rational> density_profile(const std::set<std::uint64_t>& a, std::size_t horizon);

// floor((m+1)^{2/3}) computed as the integer cube root of (m+1)^2.
std::uint64_t floor_two_thirds_power(std::uint64_t m_plus_1);

struct ThinSetVerdict {
  bool holds = true;
  Rational max_value;           // max of value(m)
  Rational max_ratio_to_bound;  // max of value(m) / bound(m)
  std::optional<std::size_t> first_violation;
};

// Checks value(m) <= (floor((m+1)^{2/3}) + 1)/(2m+1) for m < horizon after
// confirming |A intersect [0, n^3)| <= n for every n with n^3 <= horizon^2.
ThinSetVerdict thin_set_bound_check(const std::set<std::uint64_t>& a, std::size_t horizon);

// prod over m in X, from <= m < horizon, of (1 - value(m)).
Rational product_bound(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& x,
                       std::size_t from, std::size_t horizon);

struct RapidityVerdict {
  bool holds = true;
  std::set<std::uint64_t> range;  // {r(n) : n in X}
  std::optional<std::size_t> first_violation;
};

// With A = {r(n) : n in X}, confirms |A intersect [0, f(n))| <= n for every n < |f|.
RapidityVerdict rapidity_check(std::span<const std::uint64_t> r, const std::set<std::uint64_t>& x,
                               std::span<const std::uint64_t> f);

}  // namespace forcing_lab
