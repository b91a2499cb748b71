#include "forcing_lab/smz_rapid.hpp"

#include <algorithm>
#include <string>

#include "forcing_lab/error.hpp"

namespace forcing_lab {

IntervalSpec::IntervalSpec(Rational left, Rational right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_.sign() < 0 || !(left_ < right_) || right_ > Rational(1)) {
    throw Error(ErrorKind::PreconditionFailed,
                "interval [" + left_.to_string() + ", " + right_.to_string() + ") not inside [0,1]");
  }
}

IntervalSpec partition_piece(const Rational& len, std::uint64_t k) {
  if (len.sign() <= 0) {
    throw Error(ErrorKind::PreconditionFailed, "piece length must be positive");
  }
  Rational left = len * Rational(static_cast<std::int64_t>(k));
  if (!(left < Rational(1))) {
    throw Error(ErrorKind::PreconditionFailed, "piece index beyond [0,1)");
  }
  return IntervalSpec(left, min(left + len, Rational(1)));
}

std::uint64_t covering_pair(const IntervalSpec& interval, const Rational& len) {
  if (interval.length() > len) {
    throw Error(ErrorKind::PreconditionFailed, "interval longer than the partition pieces");
  }
  return static_cast<std::uint64_t>((interval.left() / len).floor());
}

CoverTranslation cover_translate(std::span<const Rational> eps, std::size_t horizon) {
  const std::size_t needed = horizon * horizon * horizon + 1;
  if (eps.size() < needed) {
    throw Error(ErrorKind::HorizonTooShort, "need eps up to index " + std::to_string(needed - 1) +
                                                ", got " + std::to_string(eps.size()) + " values");
  }
  for (const auto& e : eps) {
    if (e.sign() <= 0) throw Error(ErrorKind::PreconditionFailed, "eps must be positive");
  }
  // delta_0 .. delta_horizon; the last one fixes the pairing of an odd tail.
  std::vector<Rational> delta;
  Rational running = eps[0];
  std::size_t k = 0;
  for (std::size_t n = 0; n <= horizon; ++n) {
    for (; k <= n * n * n; ++k) running = min(running, eps[k]);
    Rational d = running.scaled_pow2(-1);
    if (!delta.empty()) d = min(d, delta.back());
    delta.push_back(d);
  }
  CoverTranslation out;
  out.delta.assign(delta.begin(), delta.begin() + static_cast<std::ptrdiff_t>(horizon));
  out.delta_prime.resize(horizon);
  for (std::size_t pair = 0; 2 * pair < horizon; ++pair) {
    const Rational& bound = delta[2 * pair + 1];
    // Largest 2^-j strictly below bound.
    int j = 0;
    while (!(Rational::pow2(-j) < bound)) ++j;
    Rational value = Rational::pow2(-j);
    out.delta_prime[2 * pair] = value;
    if (2 * pair + 1 < horizon) out.delta_prime[2 * pair + 1] = value;
  }
  return out;
}

std::vector<IntervalSpec> flatten_heavy_intervals(std::span<const std::vector<IntervalSpec>> families,
                                                  std::span<const Rational> eps) {
  std::vector<IntervalSpec> flat;
  for (std::size_t n = 0; n < families.size(); ++n) {
    if (families[n].size() >= (n + 1) * (n + 1)) {
      throw Error(ErrorKind::PreconditionFailed,
                  "family " + std::to_string(n) + " has " + std::to_string(families[n].size()) +
                      " intervals, not fewer than (n+1)^2");
    }
    std::vector<IntervalSpec> sorted = families[n];
    std::sort(sorted.begin(), sorted.end());
    flat.insert(flat.end(), sorted.begin(), sorted.end());
  }
  if (eps.size() < flat.size()) {
    throw Error(ErrorKind::HorizonTooShort, "eps shorter than the flattened sequence");
  }
  for (std::size_t j = 0; j < flat.size(); ++j) {
    if (flat[j].length() > eps[j]) {
      throw Error(ErrorKind::LengthBoundViolated,
                  "J_" + std::to_string(j) + " has length " + flat[j].length().to_string() +
                      " > eps_" + std::to_string(j) + " = " + eps[j].to_string());
    }
  }
  return flat;
}

namespace {

std::int64_t block_count(const std::set<std::uint64_t>& a, std::uint64_t m) {
  auto lo = a.lower_bound(m * m);
  auto hi = a.lower_bound((m + 1) * (m + 1));
  return static_cast<std::int64_t>(std::distance(lo, hi));
}

}  // namespace

std::vector<Rational> density_profile(const std::set<std::uint64_t>& a, std::size_t horizon) {
  std::vector<Rational> values;
  values.reserve(horizon);
  for (std::uint64_t m = 0; m < horizon; ++m) {
    values.emplace_back(block_count(a, m), static_cast<std::int64_t>(2 * m + 1));
  }
  return values;
}

std::uint64_t floor_two_thirds_power(std::uint64_t m_plus_1) {
  const std::uint64_t square = m_plus_1 * m_plus_1;
  std::uint64_t r = 0;
  while ((r + 1) * (r + 1) * (r + 1) <= square) ++r;
  return r;
}

ThinSetVerdict thin_set_bound_check(const std::set<std::uint64_t>& a, std::size_t horizon) {
  const std::uint64_t span = static_cast<std::uint64_t>(horizon) * horizon;
  for (std::uint64_t n = 0; n * n * n <= span; ++n) {
    auto count = static_cast<std::uint64_t>(std::distance(a.begin(), a.lower_bound(n * n * n)));
    if (count > n) {
      throw Error(ErrorKind::PreconditionFailed,
                  "|A intersect [0, n^3)| = " + std::to_string(count) + " > n at n = " + std::to_string(n));
    }
  }
  ThinSetVerdict verdict;
  const auto values = density_profile(a, horizon);
  std::uint64_t root = 0;
  for (std::uint64_t m = 0; m < horizon; ++m) {
    // Advance the integer cube root of (m+1)^2 incrementally.
    const std::uint64_t square = (m + 1) * (m + 1);
    while ((root + 1) * (root + 1) * (root + 1) <= square) ++root;
    Rational bound(static_cast<std::int64_t>(root + 1), static_cast<std::int64_t>(2 * m + 1));
    const Rational& v = values[m];
    verdict.max_value = max(verdict.max_value, v);
    verdict.max_ratio_to_bound = max(verdict.max_ratio_to_bound, v / bound);
    if (v > bound && !verdict.first_violation) {
      verdict.holds = false;
      verdict.first_violation = m;
    }
  }
  return verdict;
}

Rational product_bound(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& x,
                       std::size_t from, std::size_t horizon) {
  if (from > horizon) {
    throw Error(ErrorKind::PreconditionFailed, "product start beyond horizon");
  }
  Rational product(1);
  for (auto it = x.lower_bound(from); it != x.end() && *it < horizon; ++it) {
    const std::uint64_t m = *it;
    product *= Rational(1) - Rational(block_count(a, m), static_cast<std::int64_t>(2 * m + 1));
    if (product.is_zero()) break;
  }
  return product;
}

RapidityVerdict rapidity_check(std::span<const std::uint64_t> r, const std::set<std::uint64_t>& x,
                               std::span<const std::uint64_t> f) {
  for (std::size_t n = 1; n < f.size(); ++n) {
    if (f[n] <= f[n - 1]) {
      throw Error(ErrorKind::PreconditionFailed, "f is not increasing at n = " + std::to_string(n));
    }
  }
  for (std::uint64_t n : x) {
    if (n >= r.size()) {
      throw Error(ErrorKind::PreconditionFailed, "r undefined at " + std::to_string(n));
    }
    if (r[n] < n * n || r[n] >= (n + 1) * (n + 1)) {
      throw Error(ErrorKind::PreconditionFailed,
                  "r(" + std::to_string(n) + ") = " + std::to_string(r[n]) + " outside [n^2, (n+1)^2)");
    }
  }
  for (std::size_t n = 0; n < f.size(); ++n) {
    auto count = static_cast<std::size_t>(std::distance(x.begin(), x.lower_bound(f[n])));
    if (count > n) {
      throw Error(ErrorKind::PreconditionFailed,
                  "|X intersect f(n)| = " + std::to_string(count) + " > n at n = " + std::to_string(n));
    }
  }
  RapidityVerdict verdict;
  for (std::uint64_t n : x) verdict.range.insert(r[n]);
  for (std::size_t n = 0; n < f.size(); ++n) {
    auto count = static_cast<std::size_t>(
        std::distance(verdict.range.begin(), verdict.range.lower_bound(f[n])));
    if (count > n) {
      verdict.holds = false;
      verdict.first_violation = n;
      break;
    }
  }
  return verdict;
}

}  // namespace forcing_lab
