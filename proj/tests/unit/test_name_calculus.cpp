#include <set>

#include "support.hpp"

#include "forcing_lab/checks/generators.hpp"
#include "forcing_lab/name_calculus.hpp"

using namespace forcing_lab;
using namespace forcing_lab::test;

namespace {

// Coordinate where label 1 is the cylinder `g` and label 0 its complement.
LabeledPartition split(const char* g) {
  return {{0, ClopenSet::cylinder(bs(g)).complement()}, {1, ClopenSet::cylinder(bs(g))}};
}

LabeledPartition whole(std::uint64_t label = 0) { return {{label, ClopenSet::full()}}; }

}  // namespace

TEST_CASE("make_name validates every coordinate") {
  const FiniteName g = make_name({{{0, set({"0"})}, {1, set({"1"})}}});
  CHECK(g.horizon() == 1);
  CHECK(error_kind([] { make_name({{{0, set({"0"})}, {1, set({"0"})}}}); }) == ErrorKind::NotAPartition);
  CHECK(error_kind([] { make_name({{{0, set({"0"})}}}); }) == ErrorKind::NotAPartition);
  CHECK(error_kind([] { make_name({whole(), {{3, set({"0"})}, {3, set({"1"})}}}); }) == ErrorKind::NotAPartition);
  // Overlap deep inside another cell's generator.
  CHECK(error_kind([] { make_name({{{0, set({"0"})}, {1, set({"1", "0110"})}}}); }) == ErrorKind::NotAPartition);
  // Empty cells are fine.
  CHECK_NOTHROW(make_name({{{0, ClopenSet::full()}, {1, ClopenSet{}}}}));
}

TEST_CASE("the failing coordinate is named") {
  try {
    make_name({whole(), whole(), {{0, set({"0"})}}});
    FAIL("expected NotAPartition");
  } catch (const Error& e) {
    CHECK(e.detail().find("coordinate 2") != std::string::npos);
  }
}

TEST_CASE("boolean values") {
  const FiniteName g = make_name({{{0, set({"0"})}, {1, set({"1"})}}});
  CHECK(boolean_value(g, 0, 0) == set({"0"}));
  CHECK(boolean_value(g, 0, 7).empty());
  CHECK(error_kind([&] { boolean_value(g, 1, 0); }) == ErrorKind::HorizonExceeded);

  checks::Rng rng(3);
  const FiniteName r = checks::random_name(rng, 12, 6);
  for (std::size_t n = 0; n < r.horizon(); ++n) {
    Rational total;
    for (const auto& cell : r.coordinate(n)) total += boolean_value(r, n, cell.label).measure();
    CHECK(total == Rational(1));
  }
}

TEST_CASE("slalom thresholds are strict") {
  const FiniteName g = make_name({
      whole(),
      {{0, set({"0"})}, {1, set({"10"})}, {2, set({"110"})}, {3, set({"111"})}},
  });
  const Slalom s = slalom_extract(g);
  CHECK(s.slot(0).empty());
  CHECK(s.slot(1) == std::set<std::uint64_t>{0});
  CHECK(slalom_threshold(1) == q("1/4"));
  CHECK(slalom_threshold(4) == q("1/25"));
}

TEST_CASE("slalom bound on random names, with a pigeonhole oracle") {
  checks::Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    const FiniteName g = checks::random_name(rng, 15, 9);
    const Slalom s = slalom_extract(g);
    for (std::size_t n = 0; n < s.horizon(); ++n) {
      REQUIRE(s.slot(n).size() < (n + 1) * (n + 1));
      // Heavy cells each carry more than 1/(n+1)^2 of a total mass of 1.
      Rational heavy_mass;
      for (auto k : s.slot(n)) heavy_mass += boolean_value(g, n, k).measure();
      const Rational floor = slalom_threshold(n) * Rational(static_cast<std::int64_t>(s.slot(n).size()));
      if (!s.slot(n).empty()) REQUIRE(heavy_mass > floor);
      REQUIRE(heavy_mass <= Rational(1));
    }
  }
}

TEST_CASE("slalom input accepts the non-strict bound") {
  CHECK_NOTHROW(Slalom({{0}, {0, 1, 2, 3}}));
  CHECK(error_kind([] { Slalom({{0}, {0, 1, 2, 3, 4}}); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("tail index is the least n past max(N,1) with 1/(n-1) < mu") {
  CHECK(tail_index(Rational(1), 1) == 3);
  CHECK(tail_index(q("1/2"), 0) == 4);
  CHECK(tail_index(q("1/3"), 10) == 11);
  for (const char* mu : {"1/1", "3/4", "1/2", "1/3", "1/7", "2/5", "1/100"}) {
    for (std::size_t N : {0, 1, 2, 5, 40}) {
      std::size_t n = std::max<std::size_t>(N, 1) + 1;
      while (!(Rational(1, static_cast<std::int64_t>(n - 1)) < q(mu))) ++n;
      CAPTURE(mu);
      CAPTURE(N);
      CHECK(tail_index(q(mu), N) == n);
    }
  }
}

TEST_CASE("refine on the full space") {
  const FiniteName g = make_name({whole(), split("0000"), split("0001"), split("00000"), split("000010"),
                                  split("000011")});
  const std::vector<std::uint64_t> f{0, 1, 1, 1, 1, 1};
  const Refinement r = refine_condition(ClopenSet::full(), g, f, 1);
  CHECK(r.n == 3);
  CHECK(r.q == set({"1", "01", "001", "0001"}));
  CHECK(r.q.measure() == q("15/16"));
  CHECK(r.guaranteed_measure == Rational(1) - q("1/16") - q("1/25") - q("1/36"));
  for (std::size_t k = r.n; k < g.horizon(); ++k) CHECK(r.q.disjoint_from(boolean_value(g, k, f[k])));
}

TEST_CASE("refine with cells below 1/(k+2)^2") {
  // Cells of measure 1/16, 1/16, 1/32, 1/64, 1/64, 1/64 sit under 1/(k+2)^2.
  const FiniteName g = make_name({split("0000"), split("1111"), split("01010"), split("001100"),
                                  split("110011"), split("101010")});
  const std::vector<std::uint64_t> f(6, 1);
  const Refinement r = refine_condition(ClopenSet::full(), g, f, 1);
  CHECK(r.q.measure() >= Rational(1) - (q("1/25") + q("1/36") + q("1/49")));
  CHECK(r.q.measure() == q("61/64"));
}

TEST_CASE("refine preconditions") {
  const FiniteName g = make_name({whole(), split("0000"), split("0001"), split("00000"), split("000010"),
                                  split("000011")});
  const std::vector<std::uint64_t> f{0, 1, 1, 1, 1, 1};
  CHECK(error_kind([&] { refine_condition(ClopenSet{}, g, f, 1); }) == ErrorKind::EmptyCondition);
  // Label 0 is heavy at coordinate 2.
  const std::vector<std::uint64_t> heavy{0, 1, 0, 1, 1, 1};
  CHECK(error_kind([&] { refine_condition(ClopenSet::full(), g, heavy, 1); }) == ErrorKind::SlalomViolation);
  const std::vector<std::uint64_t> short_f{0, 1, 1};
  CHECK(error_kind([&] { refine_condition(ClopenSet::full(), g, short_f, 1); }) == ErrorKind::HorizonExceeded);
  // mu(p) = 1/8 needs n = 10, beyond the horizon.
  CHECK(error_kind([&] { refine_condition(set({"111"}), g, f, 1); }) == ErrorKind::HorizonExceeded);
}

TEST_CASE("heavy values") {
  const std::vector<NameCell> halves{{5, set({"0"})}, {9, set({"1"})}};
  CHECK(heavy_values(halves, q("1/4")) == std::set<std::uint64_t>{5, 9});
  CHECK(heavy_values(halves, q("1/2")).empty());
  CHECK(error_kind([&] { heavy_values(halves, Rational(0)); }) == ErrorKind::NonpositiveThreshold);

  checks::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const LabeledPartition cells = checks::random_partition(rng, 7, 40);
    const Rational t(1, rng.between(1, 60));
    REQUIRE(Rational(static_cast<std::int64_t>(heavy_values(cells, t).size())) < t.reciprocal());
  }
}

TEST_CASE("eventually different and infinitely equal") {
  const std::vector<std::uint64_t> f{3, 1, 4, 1, 5};
  const std::vector<std::uint64_t> g{3, 2, 4, 2, 6};
  for (std::size_t from = 0; from < f.size(); ++from) CHECK_FALSE(eventually_different(f, f, from));
  CHECK_FALSE(eventually_different(f, g, 0));
  CHECK(eventually_different(f, g, 3));
  CHECK(error_kind([&] { eventually_different(f, g, 5); }) == ErrorKind::HorizonExceeded);

  const Slalom empty({{}, {}, {}});
  const std::vector<std::uint64_t> id{0, 1, 2};
  CHECK(infinitely_equal_hits(id, empty).empty());
  const Slalom diagonal({{0}, {1}, {2}});
  CHECK(infinitely_equal_hits(id, diagonal) == std::set<std::size_t>{0, 1, 2});
}
