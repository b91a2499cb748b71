#include <numeric>

#include "support.hpp"

#include "forcing_lab/checks/generators.hpp"
#include "forcing_lab/smz_rapid.hpp"

using namespace forcing_lab;
using namespace forcing_lab::test;

namespace {

std::vector<Rational> geometric(std::size_t count) {
  std::vector<Rational> eps;
  for (std::size_t k = 0; k < count; ++k) eps.push_back(Rational::pow2(-static_cast<int>(k)));
  return eps;
}

std::set<std::uint64_t> cubes(std::uint64_t below) {
  std::set<std::uint64_t> out;
  for (std::uint64_t k = 0; k * k * k < below; ++k) out.insert(k * k * k);
  return out;
}

std::set<std::uint64_t> range_set(std::uint64_t below) {
  std::set<std::uint64_t> out;
  for (std::uint64_t k = 0; k < below; ++k) out.insert(k);
  return out;
}

}  // namespace

TEST_CASE("intervals live in [0,1]") {
  CHECK(IntervalSpec(q("1/4"), q("1/2")).length() == q("1/4"));
  CHECK(error_kind([] { IntervalSpec(q("1/2"), q("1/2")); }) == ErrorKind::PreconditionFailed);
  CHECK(error_kind([] { IntervalSpec(q("-1/2"), q("1/2")); }) == ErrorKind::PreconditionFailed);
  CHECK(error_kind([] { IntervalSpec(q("1/2"), q("3/2")); }) == ErrorKind::PreconditionFailed);
  CHECK(IntervalSpec(q("0"), q("1/2")) < IntervalSpec(q("0"), q("3/4")));
}

TEST_CASE("partition pieces and covering pairs") {
  CHECK(partition_piece(q("1/3"), 2) == IntervalSpec(q("2/3"), q("1")));
  CHECK(partition_piece(q("2/5"), 2) == IntervalSpec(q("4/5"), q("1")));
  CHECK(error_kind([] { partition_piece(q("1/3"), 3); }) == ErrorKind::PreconditionFailed);
  CHECK(covering_pair(IntervalSpec(q("1/5"), q("2/5")), q("1/4")) == 0);
  CHECK(error_kind([] { covering_pair(IntervalSpec(q("0"), q("1/2")), q("1/4")); }) == ErrorKind::PreconditionFailed);

  checks::Rng rng(51);
  for (int i = 0; i < 300; ++i) {
    const Rational len(1, rng.between(2, 20));
    const Rational left(rng.between(0, 999), 1000);
    const Rational right = min(left + len * Rational(rng.between(1, 100), 100), Rational(1));
    const IntervalSpec interval(left, right);
    const auto k = covering_pair(interval, len);
    const Rational lo = len * Rational(static_cast<std::int64_t>(k));
    CHECK(lo <= interval.left());
    CHECK(interval.right() <= min(lo + len + len, Rational(1)));
  }
}

TEST_CASE("geometric eps gives delta_n = 2^-(n^3+1)") {
  const auto out = cover_translate(geometric(6 * 6 * 6 + 1), 6);
  REQUIRE(out.delta.size() == 6);
  for (int n = 0; n < 6; ++n) CHECK(out.delta[n] == Rational::pow2(-(n * n * n + 1)));
  const std::vector<Rational> expected = {Rational::pow2(-3),   Rational::pow2(-3),  Rational::pow2(-29),
                                          Rational::pow2(-29),  Rational::pow2(-127), Rational::pow2(-127)};
  CHECK(out.delta_prime == expected);
}

TEST_CASE("constant eps") {
  const std::vector<Rational> eps(5 * 5 * 5 + 1, q("1/2"));
  const auto out = cover_translate(eps, 5);
  for (const auto& d : out.delta) CHECK(d == q("1/4"));
  CHECK(out.delta_prime[4] == q("1/8"));
}

TEST_CASE("cover_translate needs eps up to horizon^3") {
  CHECK(error_kind([] { cover_translate(geometric(27), 3); }) == ErrorKind::HorizonTooShort);
  CHECK_NOTHROW(cover_translate(geometric(28), 3));
  std::vector<Rational> eps(28, q("1/2"));
  eps[5] = Rational(0);
  CHECK(error_kind([&] { cover_translate(eps, 3); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("cover_translate invariants on random eps") {
  checks::Rng rng(52);
  for (int i = 0; i < 50; ++i) {
    const std::size_t horizon = static_cast<std::size_t>(rng.between(1, 5));
    std::vector<Rational> eps;
    for (std::size_t k = 0; k <= horizon * horizon * horizon; ++k) eps.emplace_back(rng.between(1, 9), rng.between(1, 64));
    const auto out = cover_translate(eps, horizon);
    for (std::size_t n = 0; n < horizon; ++n) {
      for (std::size_t k = 0; k <= n * n * n; ++k) CHECK(out.delta[n] < eps[k]);
      CHECK(out.delta_prime[n] < out.delta[n]);
      if (n > 0) {
        CHECK(out.delta[n] <= out.delta[n - 1]);
        CHECK(out.delta_prime[n] <= out.delta_prime[n - 1]);
      }
      if (n % 2 == 1) CHECK(out.delta_prime[n] == out.delta_prime[n - 1]);
    }
  }
}

TEST_CASE("flattening heavy intervals") {
  CHECK(flatten_heavy_intervals(std::vector<std::vector<IntervalSpec>>(4), geometric(1)).empty());

  const auto tr = cover_translate(geometric(5 * 5 * 5 + 1), 5);
  std::vector<std::vector<IntervalSpec>> families(5);
  for (std::size_t n = 0; n < families.size(); ++n) {
    for (std::size_t i = 0; i + 1 < (n + 1) * (n + 1); ++i) {
      // Descending order on input; the output must be sorted within each family.
      const Rational left = tr.delta_prime[n] * Rational(static_cast<std::int64_t>((n + 1) * (n + 1) - i));
      families[n].emplace_back(left, left + tr.delta_prime[n]);
    }
  }
  const auto eps = geometric(200);
  const auto flat = flatten_heavy_intervals(families, eps);
  std::size_t total = 0;
  for (const auto& f : families) total += f.size();
  CHECK(flat.size() == total);
  std::size_t j = 0;
  for (std::size_t n = 0; n < families.size(); ++n) {
    for (std::size_t i = 0; i < families[n].size(); ++i, ++j) {
      CHECK(flat[j].length() == tr.delta_prime[n]);
      if (i > 0) CHECK(flat[j - 1] < flat[j]);
    }
  }

  std::vector<std::vector<IntervalSpec>> crowded = {{IntervalSpec(q("0"), q("1/4"))}};
  CHECK(error_kind([&] { flatten_heavy_intervals(crowded, eps); }) == ErrorKind::PreconditionFailed);
  std::vector<std::vector<IntervalSpec>> wide = {{}, {IntervalSpec(q("0"), q("3/4")), IntervalSpec(q("1/4"), q("1"))}};
  try {
    flatten_heavy_intervals(wide, eps);
    FAIL("expected LengthBoundViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthBoundViolated);
    CHECK(e.detail().find("J_1") != std::string::npos);
  }
  CHECK(error_kind([&] { flatten_heavy_intervals(wide, geometric(1)); }) == ErrorKind::HorizonTooShort);
}

TEST_CASE("density profiles") {
  for (const auto& v : density_profile(range_set(400), 20)) CHECK(v == Rational(1));
  for (const auto& v : density_profile({}, 20)) CHECK(v == Rational(0));
  const auto profile = density_profile(cubes(1000), 3);
  CHECK(profile == std::vector<Rational>{q("1/1"), q("1/3"), q("1/5")});

  checks::Rng rng(53);
  for (int i = 0; i < 50; ++i) {
    std::set<std::uint64_t> a;
    for (int k = 0; k < 60; ++k) a.insert(rng.below(400));
    const auto values = density_profile(a, 20);
    for (std::uint64_t m = 0; m < 20; ++m) {
      std::int64_t count = 0;
      for (auto v : a) count += (v >= m * m && v < (m + 1) * (m + 1)) ? 1 : 0;
      CHECK(values[m] == Rational(count, static_cast<std::int64_t>(2 * m + 1)));
      CHECK(values[m] <= Rational(1));
    }
  }
}

TEST_CASE("integer two-thirds powers") {
  CHECK(floor_two_thirds_power(1) == 1);
  CHECK(floor_two_thirds_power(2) == 1);
  CHECK(floor_two_thirds_power(3) == 2);
  CHECK(floor_two_thirds_power(8) == 4);
  CHECK(floor_two_thirds_power(27) == 9);
  for (std::uint64_t k = 1; k < 2000; ++k) {
    const auto r = floor_two_thirds_power(k);
    CHECK(r * r * r <= k * k);
    CHECK((r + 1) * (r + 1) * (r + 1) > k * k);
  }
}

TEST_CASE("thin sets") {
  const auto v = thin_set_bound_check(cubes(1000ULL * 1000 * 1000), 1000);
  CHECK(v.holds);
  CHECK(v.max_value == Rational(1));
  const auto none = thin_set_bound_check({}, 50);
  CHECK(none.holds);
  CHECK(none.max_ratio_to_bound == Rational(0));
  try {
    thin_set_bound_check(range_set(100), 10);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionFailed);
    CHECK(e.detail().find("n = 2") != std::string::npos);
  }
}

TEST_CASE("product bounds") {
  const std::set<std::uint64_t> a = {1, 4, 16};
  CHECK(product_bound(a, {}, 0, 10) == Rational(1));
  CHECK(product_bound(a, {1, 2}, 0, 10) == q("8/15"));
  CHECK(product_bound({0}, {0, 1}, 0, 10) == Rational(0));
  CHECK(product_bound(a, {1, 2}, 2, 10) == q("4/5"));
  CHECK(error_kind([&] { product_bound(a, {1}, 11, 10); }) == ErrorKind::PreconditionFailed);

  // Antitone in the horizon and in A.
  checks::Rng rng(54);
  for (int i = 0; i < 50; ++i) {
    std::set<std::uint64_t> sparse;
    std::set<std::uint64_t> x;
    for (int k = 0; k < 40; ++k) sparse.insert(rng.below(225));
    for (int k = 0; k < 6; ++k) x.insert(rng.below(15));
    std::set<std::uint64_t> dense = sparse;
    for (int k = 0; k < 40; ++k) dense.insert(rng.below(225));
    Rational previous(1);
    for (std::size_t horizon = 0; horizon <= 15; ++horizon) {
      const Rational p = product_bound(sparse, x, 0, horizon);
      CHECK(p <= previous);
      CHECK(product_bound(dense, x, 0, horizon) <= p);
      previous = p;
    }
  }
}

TEST_CASE("rapidity") {
  std::vector<std::uint64_t> squares(200);
  for (std::uint64_t n = 0; n < squares.size(); ++n) squares[n] = n * n;
  const std::vector<std::uint64_t> powers = {1, 2, 4, 8, 16, 32, 64, 128};

  CHECK(rapidity_check(squares, {}, powers).holds);
  const auto v = rapidity_check(squares, {1, 10, 100}, powers);
  CHECK(v.holds);
  CHECK(v.range == std::set<std::uint64_t>{1, 100, 10000});
  // 0 sits below f(0) = 1.
  CHECK(error_kind([&] { rapidity_check(squares, {0, 10, 100}, powers); }) == ErrorKind::PreconditionFailed);
  CHECK(error_kind([&] { rapidity_check(squares, {1, 2, 3}, powers); }) == ErrorKind::PreconditionFailed);
  std::vector<std::uint64_t> off = squares;
  off[10] = 200;
  CHECK(error_kind([&] { rapidity_check(off, {10}, powers); }) == ErrorKind::PreconditionFailed);
  CHECK(error_kind([&] { rapidity_check(squares, {300}, powers); }) == ErrorKind::PreconditionFailed);
  const std::vector<std::uint64_t> flat_f = {1, 1};
  CHECK(error_kind([&] { rapidity_check(squares, {}, flat_f); }) == ErrorKind::PreconditionFailed);

  checks::Rng rng(55);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::uint64_t> r(200);
    for (std::uint64_t n = 0; n < r.size(); ++n) r[n] = n * n + rng.below(2 * n + 1);
    std::set<std::uint64_t> x;
    for (std::size_t n = 1; n < powers.size(); ++n) {
      if (rng.coin()) x.insert(powers[n - 1] + rng.below(powers[n] - powers[n - 1]));
    }
    CHECK(rapidity_check(r, x, powers).holds);
  }
}
