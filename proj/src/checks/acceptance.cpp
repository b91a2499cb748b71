#include "forcing_lab/checks/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "forcing_lab/checks/generators.hpp"
#include "forcing_lab/checks/oracles.hpp"
#include "forcing_lab/diagram.hpp"
#include "forcing_lab/error.hpp"
#include "forcing_lab/name_calculus.hpp"
#include "forcing_lab/poset.hpp"
#include "forcing_lab/smz_rapid.hpp"

namespace forcing_lab::checks {
namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counts checks and keeps the first failure.
class Tally {
 public:
  void expect(bool ok, const char* what) {
    ++checks_;
    if (!ok && failure_.empty()) failure_ = what;
  }
  void expect(bool ok, const std::string& what) { expect(ok, what.c_str()); }
  void note(std::string text) { notes_ = std::move(text); }

  Outcome done() const {
    std::ostringstream os;
    if (failure_.empty()) {
      os << checks_ << " checks";
    } else {
      os << "first failure: " << failure_;
    }
    if (!notes_.empty()) os << "; " << notes_;
    return {failure_.empty(), os.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::string failure_;
  std::string notes_;
};

BinaryString bs(const char* text) { return BinaryString::parse(text); }

Outcome set_algebra(std::uint64_t seed) {
  Rng rng(mix(seed, 1));
  std::vector<ClopenSet> sets;
  for (int i = 0; i < 500; ++i) sets.push_back(random_clopen(rng, kBitmapDepth));
  const ClopenSet whole = ClopenSet::full();
  Tally t;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const ClopenSet& A = sets[i];
    const ClopenSet& B = sets[(i + 1) % sets.size()];
    const ClopenSet& C = sets[(i + 7) % sets.size()];
    const Bitmap a = to_bitmap(A), b = to_bitmap(B);

    t.expect(ClopenSet::canonicalize(A.generators()) == A, "canonicalize is idempotent");
    t.expect(to_bitmap(A.union_with(B)) == (a | b), "union matches bitmap");
    t.expect(to_bitmap(A.intersect(B)) == (a & b), "intersection matches bitmap");
    t.expect(to_bitmap(A.complement()) == ~a, "complement matches bitmap");
    t.expect(to_bitmap(A.difference(B)) == (a & ~b), "difference matches bitmap");
    t.expect(A.measure() == bitmap_measure(a), "measure matches bitmap count");
    t.expect((A == B) == (a == b), "canonical forms are unique");
    t.expect(A.disjoint_from(B) == (a & b).none(), "disjointness matches bitmap");
    t.expect(A.subset_of(B) == (a & ~b).none(), "inclusion matches bitmap");

    t.expect(A.union_with(B).measure() + A.intersect(B).measure() == A.measure() + B.measure(),
             "inclusion-exclusion");
    t.expect(A.difference(B).measure() + A.intersect(B).measure() == A.measure(),
             "additivity over a split");
    t.expect(A.measure() + A.complement().measure() == Rational(1), "measure of complement");
    t.expect(A.complement().complement() == A, "double complement");
    t.expect(A.union_with(A.complement()) == whole, "excluded middle");
    t.expect(A.intersect(A.complement()).empty(), "noncontradiction");
    t.expect(A.union_with(B).complement() == A.complement().intersect(B.complement()), "De Morgan (union)");
    t.expect(A.intersect(B).complement() == A.complement().union_with(B.complement()),
             "De Morgan (intersection)");
    t.expect(A.intersect(B.union_with(C)) == A.intersect(B).union_with(A.intersect(C)),
             "intersection distributes");
    t.expect(A.union_with(B.intersect(C)) == A.union_with(B).intersect(A.union_with(C)), "union distributes");
    t.expect(A.union_with(B) == B.union_with(A) && A.intersect(B) == B.intersect(A), "commutativity");

    const BinaryString s = rng.string(static_cast<int>(rng.between(0, kBitmapDepth)));
    const std::uint64_t lo = s.index() << (kBitmapDepth - s.length());
    const std::uint64_t hi = lo + (std::uint64_t{1} << (kBitmapDepth - s.length()));
    bool all = true, any = false;
    for (std::uint64_t x = lo; x < hi; ++x) {
      all = all && a.test(x);
      any = any || a.test(x);
    }
    t.expect(A.contains_cylinder(s) == all, "contains_cylinder matches bitmap");
    t.expect(A.meets_cylinder(s) == any, "meets_cylinder matches bitmap");
  }

  constexpr int r = 4;
  for (int i = 0; i < 100; ++i) {
    auto resolution = [&] {
      return PlaneResolution{static_cast<int>(rng.between(0, r)), static_cast<int>(rng.between(0, r))};
    };
    const ClopenPlaneSet P = random_plane(rng, resolution());
    const ClopenPlaneSet Q = random_plane(rng, resolution());
    const auto p = plane_bitmap(P, r), q = plane_bitmap(Q, r);
    auto combine = [&](auto op) {
      std::vector<bool> out(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) out[k] = op(p[k], q[k]);
      return out;
    };
    auto count = [](const std::vector<bool>& v) {
      std::int64_t n = 0;
      for (bool x : v) n += x ? 1 : 0;
      return Rational(n, std::int64_t{1} << (2 * r));
    };
    t.expect(plane_bitmap(P.union_with(Q), r) == combine([](bool x, bool y) { return x || y; }),
             "plane union matches bitmap");
    t.expect(plane_bitmap(P.intersect(Q), r) == combine([](bool x, bool y) { return x && y; }),
             "plane intersection matches bitmap");
    t.expect(plane_bitmap(P.difference(Q), r) == combine([](bool x, bool y) { return x && !y; }),
             "plane difference matches bitmap");
    t.expect(plane_bitmap(P.complement(), r) == combine([](bool x, bool) { return !x; }),
             "plane complement matches bitmap");
    t.expect(P.measure() == count(p), "plane measure matches bitmap");
    t.expect(P.union_with(Q).measure() + P.intersect(Q).measure() == P.measure() + Q.measure(),
             "plane inclusion-exclusion");
  }
  return t.done();
}

Outcome slalom_bound(std::uint64_t seed) {
  Rng rng(mix(seed, 2));
  Tally t;
  std::size_t largest = 0;
  for (int i = 0; i < 200; ++i) {
    const FiniteName g = random_name(rng, 20, 10);
    const Slalom s = slalom_extract(g);
    t.expect(s.horizon() == 20, "slalom horizon equals the name's");
    for (std::size_t n = 0; n < 20; ++n) {
      t.expect(s.slot(n).size() < (n + 1) * (n + 1), "|S(n)| < (n+1)^2");
      std::set<std::uint64_t> heavy;
      for (const auto& cell : g.coordinate(n)) {
        if (cell.value.measure() > Rational(1, static_cast<std::int64_t>((n + 1) * (n + 1)))) {
          heavy.insert(cell.label);
        }
      }
      t.expect(s.slot(n) == heavy, "slot equals the strictly heavy labels");
      largest = std::max(largest, s.slot(n).size());
    }
  }
  t.note("largest slot " + std::to_string(largest));
  return t.done();
}

Outcome refinement_soundness(std::uint64_t seed) {
  Rng rng(mix(seed, 3));
  Tally t;
  for (int i = 0; i < 100; ++i) {
    const auto horizon = static_cast<std::size_t>(rng.between(8, 20));
    const FiniteName g = random_name(rng, horizon, kBitmapDepth);
    ClopenSet p = random_clopen(rng, kBitmapDepth);
    while (p.measure() < Rational(1, 4)) p = random_clopen(rng, kBitmapDepth);
    const auto N = static_cast<std::size_t>(rng.between(0, 3));
    const Slalom slots = slalom_extract(g);
    std::vector<std::uint64_t> f(horizon);
    for (std::size_t k = 0; k < horizon; ++k) {
      std::vector<std::uint64_t> light;
      for (const auto& cell : g.coordinate(k)) {
        if (!slots.contains(k, cell.label)) light.push_back(cell.label);
      }
      // Occasionally a value no cell carries.
      f[k] = light.empty() || rng.below(5) == 0 ? 1000 + k : light[rng.below(light.size())];
    }
    const Refinement r = refine_condition(p, g, f, N);
    const Bitmap q = to_bitmap(r.q);
    t.expect(r.n > std::max<std::size_t>(N, 1), "n > max(N, 1)");
    t.expect(r.q.measure() > Rational(0), "mu(q) > 0");
    t.expect(r.guaranteed_measure > Rational(0), "guaranteed bound is positive");
    t.expect(r.q.measure() >= r.guaranteed_measure, "mu(q) meets the guaranteed bound");
    t.expect((q & ~to_bitmap(p)).none(), "q is inside p");
    for (std::size_t k = r.n; k < horizon; ++k) {
      t.expect((q & to_bitmap(boolean_value(g, k, f[k]))).none(), "q misses [[g(k) = f(k)]]");
    }
  }
  return t.done();
}

Outcome extension_correctness(std::uint64_t seed) {
  Rng rng(mix(seed, 4));
  Tally t;
  std::uint64_t drawn = 0, tops = 0;
  int deepest = 0;
  for (int i = 0; i < 100; ++i) {
    const Condition p = random_condition(rng, ConditionShape{});
    ExtendOptions options;
    options.seed = rng.next();
    const ExtendResult r = extend(p, options);
    const Condition& q = r.condition;
    const int m = p.depth();
    const int target = p.u.empty() ? m + 1 : r.stats.chebyshev_depth;
    deepest = std::max(deepest, q.depth());

    t.expect(validate(q).valid, "output validates");
    t.expect(stronger_or_equal(q, p), "output extends the input");
    t.expect(q.depth() == target, "output depth is the Chebyshev depth");
    for (int d = m + 1; d < q.depth(); ++d) {
      bool copied = true;
      const auto& level = q.h.level(d);
      for (std::size_t x = 0; x < level.size(); ++x) copied = copied && level[x] == p.h.top()[x >> (d - m)];
      t.expect(copied, "interior levels copy h(s|m)");
    }
    bool grew = true;
    const auto& top = q.h.top();
    for (std::size_t x = 0; x < top.size(); ++x) {
      const BinaryString& base = p.h.top()[x >> (q.depth() - m)];
      grew = grew && top[x].length() == base.length() + 1 && base.is_prefix_of(top[x]);
    }
    t.expect(grew, "top level grows by exactly one bit");
    for (auto n : r.stats.samples) drawn += n;
    tops += r.stats.samples.size();
  }
  const double mean = tops == 0 ? 0.0 : static_cast<double>(drawn) / static_cast<double>(tops);
  t.expect(mean <= 4.0, "mean samples per top-level string <= 4");
  char buf[96];
  std::snprintf(buf, sizeof buf, "mean samples %.3f, deepest stem %d", mean, deepest);
  t.note(buf);
  return t.done();
}

Outcome tchebyshev_oracle(std::uint64_t seed) {
  Rng rng(mix(seed, 5));
  Tally t;
  std::size_t instances = 0;
  for (int i = 0; i < 20; ++i) {
    WeightFunction phi = WeightFunction::full();
    const PlaneResolution res{static_cast<int>(rng.between(1, 3)), static_cast<int>(rng.between(1, 3))};
    if (i % 2 == 0) {
      ClopenPlaneSet f = random_plane(rng, res);
      while (f.empty()) f = random_plane(rng, res);
      phi = phi_from_clopen(f);
    } else {
      phi = random_weight(rng, res);
    }
    const BinaryString root = rng.string(static_cast<int>(rng.between(0, 2)));
    Condition p;
    p.h = Stem::from_levels({{root}});
    const Rational sc = score(p.h, phi);
    if (sc.is_zero()) {
      --i;
      continue;
    }
    p.u.push_back(make_tagged(sc * Rational(rng.between(1, 7), 8), phi));
    const Rational cheb = extension_delta(p);
    const Rational half = direct_phi(phi, BinaryString{}, root) * Rational(1, 2);

    std::vector<Rational> deltas;
    for (int j = 0; j <= 6; ++j) deltas.push_back(cheb.scaled_pow2(j));
    deltas.push_back(Rational(1, 32));

    for (int mp : {2, 3}) {
      const std::uint64_t leaves = std::uint64_t{1} << mp;
      std::vector<Rational> v0, v1;
      for (std::uint64_t x = 0; x < leaves; ++x) {
        const BinaryString tt = BinaryString::from_index(x, mp);
        v0.push_back(direct_phi(phi, tt, root.child(0)));
        v1.push_back(direct_phi(phi, tt, root.child(1)));
      }
      const std::uint64_t maps = std::uint64_t{1} << leaves;
      std::vector<Rational> ys(maps);
      Rational mean, second;
      for (std::uint64_t e = 0; e < maps; ++e) {
        for (std::uint64_t x = 0; x < leaves; ++x) ys[e] += ((e >> x) & 1U) ? v1[x] : v0[x];
        mean += ys[e];
      }
      mean /= Rational(static_cast<std::int64_t>(maps));
      for (const auto& y : ys) second += (y - mean) * (y - mean);
      const Rational variance = second / Rational(static_cast<std::int64_t>(maps));
      t.expect(mean == half, "E[Y] = phi(s, h(s))/2");
      t.expect(variance <= Rational::pow2(-mp - 2 * root.length() - 4), "variance bound");

      for (const auto& delta : deltas) {
        std::int64_t bad = 0;
        bool agree = true;
        for (std::uint64_t e = 0; e < maps; ++e) {
          const bool holds = ys[e] > half - delta;
          if (!holds) ++bad;
          const std::uint64_t word = e;
          agree = agree && satisfies_otimes(p, BinaryString{}, mp, std::span(&word, 1), delta, 0) == holds;
        }
        const Rational fraction(bad, static_cast<std::int64_t>(maps));
        const Rational tcheb = Rational::pow2(-mp) / (delta * delta);
        t.expect(agree, "library (x) test agrees with the enumeration");
        t.expect(fraction <= min(Rational(1), tcheb), "violating fraction <= min(1, 2^-m'/delta^2)");
        t.expect(fraction <= variance / (delta * delta), "violating fraction <= Var/delta^2");
        ++instances;
      }
    }
  }
  t.note(std::to_string(instances) + " (phi, m', delta) enumerations");
  return t.done();
}

Outcome null_avoidance(std::uint64_t seed) {
  const ClopenPlaneSet g = ClopenPlaneSet::rectangle(bs("1"), bs("01"));
  const ClopenPlaneSet f = g.complement();
  const Rational eps(1, 4);
  const std::vector<ScheduledCover> schedule{{0, g, eps}};
  Tally t;
  t.expect(g.measure() == Rational(1, 8), "cover has measure 1/8");
  std::size_t certificates = 0;
  for (std::uint64_t run = 0; run < 10; ++run) {
    GenericRunOptions options;
    options.seed = mix(seed, 60 + run);
    const GenericRunResult r = generic_run(schedule, 4, options);
    t.expect(r.invariant_held, "run reports the invariant held");
    t.expect(validate(r.final_condition).valid, "final condition validates");
    for (const auto& entry : r.trace) {
      for (const auto& c : entry.certificates) {
        ++certificates;
        t.expect(c.threshold == Rational(3, 4), "threshold is 1 - eps");
        t.expect(c.score > Rational(3, 4), "scoreF > 3/4");
      }
    }
    const Condition& q = r.final_condition;
    bool full = q.depth() >= f.resolution().x;
    for (const auto& hs : q.h.top()) full = full && hs.length() >= f.resolution().y;
    t.expect(full, "final condition reaches the cover's resolution");
    const Certificate cert = certificate(q, f);
    t.expect(cert.inside == cert.score, "inside = scoreF at full depth");
    t.expect(cert.score > Rational(3, 4), "final scoreF > 3/4");
  }
  t.note(std::to_string(certificates) + " trace certificates");
  return t.done();
}

Outcome phi_full_identity(std::uint64_t seed) {
  Rng rng(mix(seed, 7));
  Tally t;
  for (int i = 0; i < 200; ++i) {
    const Stem h = random_stem(rng, static_cast<int>(rng.between(0, 6)), 3, 3);
    const WeightFunction full = WeightFunction::full(
        {static_cast<int>(rng.between(0, 4)), static_cast<int>(rng.between(0, 4))});
    t.expect(score(h, full) == Rational(1), "score(h, phi_full) = 1");
    t.expect(direct_score(h, full) == Rational(1), "direct sum agrees");
  }
  return t.done();
}

WeightFunction perturb(Rng& rng, const WeightFunction& phi) {
  const WeightFunction noise = random_weight(rng, phi.resolution());
  std::vector<Rational> table(phi.table().size());
  for (std::size_t c = 0; c < table.size(); ++c) table[c] = (phi.table()[c] + noise.table()[c]) / Rational(2);
  return WeightFunction::from_table(phi.resolution(), std::move(table));
}

Outcome centered_compatibility(std::uint64_t seed) {
  Rng rng(mix(seed, 8));
  Tally t;
  int pairs = 0;
  std::uint64_t attempts = 0;
  while (pairs < 100 && attempts < 100000) {
    const Condition a = random_condition(rng, ConditionShape{});
    const CenteredIndex ia = sigma_centered_index(a);
    for (int tries = 0; tries < 50 && pairs < 100; ++tries) {
      ++attempts;
      Condition b;
      b.h = a.h;
      bool ok = true;
      for (const auto& w : a.u) {
        WeightFunction phi = perturb(rng, *w.phi);
        if (!(score(b.h, phi) > w.epsilon)) {
          ok = false;
          break;
        }
        b.u.push_back(make_tagged(w.epsilon, std::move(phi)));
      }
      if (!ok || !(sigma_centered_index(b) == ia)) continue;
      ++pairs;
      const Condition merged = merge_centered(a, b);
      t.expect(validate(merged).valid, "merged condition validates");
      t.expect(stronger_or_equal(merged, a) && stronger_or_equal(merged, b), "merge is a common extension");
      break;
    }
  }
  t.expect(pairs == 100, "found 100 pairs with identical index");
  t.note(std::to_string(pairs) + " pairs");
  return t.done();
}

Outcome smz_translation(std::uint64_t seed) {
  Rng rng(mix(seed, 9));
  constexpr std::size_t horizon = 6;
  std::vector<Rational> eps;
  for (std::size_t n = 0; n <= horizon * horizon * horizon; ++n) eps.push_back(Rational::pow2(-static_cast<int>(n)));
  Tally t;
  const CoverTranslation ct = cover_translate(eps, horizon);
  t.expect(ct.delta.size() >= horizon && ct.delta_prime.size() >= horizon, "delta sequences cover the horizon");

  // delta_n recomputed from its definition.
  for (std::size_t n = 0; n < horizon; ++n) {
    Rational least = eps[0];
    for (std::size_t k = 0; k <= n * n * n; ++k) least = min(least, eps[k]);
    t.expect(ct.delta[n] == least / Rational(2), "delta_n = min eps_k / 2");
    if (n > 0) t.expect(ct.delta[n] <= ct.delta[n - 1], "delta is nonincreasing");
    t.expect(ct.delta_prime[n] == ct.delta_prime[n ^ 1U], "delta' comes in pairs");
    t.expect(ct.delta_prime[n] < ct.delta[n | 1U], "delta'_n < delta_{2k+1}");
    t.expect(ct.delta_prime[n] * Rational(2) >= ct.delta[n | 1U], "delta' is the largest such power of two");
  }

  for (int instance = 0; instance < 21; ++instance) {
    std::vector<std::vector<IntervalSpec>> families;
    for (std::size_t n = 0; n < horizon; ++n) {
      std::vector<IntervalSpec> family;
      const std::uint64_t size = (n + 1) * (n + 1) - 1;
      const Rational pieces = ct.delta_prime[n].reciprocal();
      const std::uint64_t room =
          pieces > Rational(1000000) ? 1000000 : static_cast<std::uint64_t>(pieces.floor());
      // Instance 0 is the plain leftmost layout; the rest scatter pieces.
      std::set<std::uint64_t> slots;
      for (std::uint64_t k = 0; slots.size() < size; ++k) slots.insert(instance == 0 ? k : rng.below(room));
      for (auto slot : slots) family.push_back(partition_piece(ct.delta_prime[n], slot));
      families.push_back(std::move(family));
    }
    const std::vector<IntervalSpec> j = flatten_heavy_intervals(families, eps);
    std::size_t index = 0;
    bool exact = true, bounded = true;
    for (std::size_t n = 0; n < horizon; ++n) {
      for (std::size_t k = 0; k < families[n].size(); ++k, ++index) {
        exact = exact && index < j.size() && j[index].length() == ct.delta_prime[n];
        bounded = bounded && index < j.size() && j[index].length() <= eps[index];
      }
    }
    t.expect(index == j.size(), "J has one entry per heavy interval");
    t.expect(exact, "J lengths are exactly delta'");
    t.expect(bounded, "length(J_j) <= eps_j");
  }
  return t.done();
}

Outcome rapid_filter(std::uint64_t seed) {
  Rng rng(mix(seed, 10));
  Tally t;
  std::set<std::uint64_t> cubes;
  for (std::uint64_t k = 0; k <= 101; ++k) cubes.insert(k * k * k);
  const ThinSetVerdict thin = thin_set_bound_check(cubes, 1000);
  t.expect(thin.holds, "cubes pass the thin-set bound for m < 1000");

  for (int i = 0; i < 100; ++i) {
    const auto len = static_cast<std::size_t>(rng.between(3, 12));
    std::vector<std::uint64_t> f;
    std::uint64_t at = static_cast<std::uint64_t>(rng.between(1, 5));
    for (std::size_t n = 0; n < len; ++n) {
      f.push_back(at);
      at += static_cast<std::uint64_t>(rng.between(1, 20));
    }
    std::set<std::uint64_t> x;
    auto witness_ok = [&](const std::set<std::uint64_t>& cand) {
      for (std::size_t n = 0; n < f.size(); ++n) {
        if (static_cast<std::size_t>(std::distance(cand.begin(), cand.lower_bound(f[n]))) > n) return false;
      }
      return true;
    };
    for (std::uint64_t v = 0; v < f.back(); ++v) {
      if (rng.below(3) != 0) continue;
      auto cand = x;
      cand.insert(v);
      if (witness_ok(cand)) x = std::move(cand);
    }
    std::vector<std::uint64_t> r;
    for (std::uint64_t n = 0; n <= f.back(); ++n) r.push_back(n * n + rng.below(2 * n + 1));
    const RapidityVerdict v = rapidity_check(r, x, f);
    std::set<std::uint64_t> a;
    for (auto n : x) a.insert(r[n]);
    t.expect(v.holds, "rapidity holds");
    t.expect(v.range == a, "range is r restricted to X");
    t.expect(witness_ok(a), "|A cap f(n)| <= n by direct count");
  }

  for (int i = 0; i < 50; ++i) {
    std::set<std::uint64_t> a, bigger, x;
    for (std::uint64_t v = 0; v < 441; ++v) {
      if (rng.below(3) == 0) a.insert(v);
      if (a.count(v) != 0 || rng.below(5) == 0) bigger.insert(v);
    }
    for (std::uint64_t m = 0; m < 20; ++m) {
      if (rng.coin()) x.insert(m);
    }
    const auto from = static_cast<std::size_t>(rng.between(0, 5));
    Rational previous(1);
    for (std::size_t horizon = from; horizon <= 20; ++horizon) {
      const Rational now = product_bound(a, x, from, horizon);
      t.expect(now <= previous, "product_bound is antitone in the horizon");
      t.expect(product_bound(bigger, x, from, horizon) <= now, "product_bound is antitone in A");
      previous = now;
    }
  }
  return t.done();
}

DiagramAssignment assignment(std::initializer_list<std::pair<Node, int>> raised) {
  DiagramAssignment a = DiagramAssignment::constant(CardinalLabel::aleph(1));
  for (auto [node, level] : raised) a[node] = CardinalLabel::aleph(level);
  return a;
}

bool has_constraint(const std::vector<ExtensionConstraint>& cs, Node node, Relation rel, CardinalLabel bound) {
  for (const auto& c : cs) {
    if (c.node == node && c.relation == rel && c.bound == bound) return true;
  }
  return false;
}

Outcome diagram_checker(std::uint64_t) {
  Tally t;
  std::size_t accepted = 0;
  for (std::uint32_t mask = 0; mask < (1U << kNodeCount); ++mask) {
    DiagramAssignment a;
    for (std::size_t i = 0; i < kNodeCount; ++i) a[kAllNodes[i]] = CardinalLabel::aleph(1 + static_cast<int>((mask >> i) & 1U));
    const DiagramVerdict v = check_assignment(a);
    t.expect(v.accepted == diagram_oracle(a), "checker matches the brute-force oracle");
    t.expect(v.accepted == v.violations.empty(), "violations listed iff rejected");
    accepted += v.accepted ? 1 : 0;
  }
  const CardinalLabel a1 = CardinalLabel::aleph(1), a2 = CardinalLabel::aleph(2);

  const auto flat = random_extension_constraints(DiagramAssignment::constant(a1));
  for (Node n : {Node::AddN, Node::CofN, Node::B, Node::D, Node::CovM, Node::NonM, Node::AddM, Node::CofM}) {
    t.expect(has_constraint(flat, n, Relation::Equal, a1), "constant ground fixes the preserved nodes");
  }
  t.expect(has_constraint(flat, Node::CovN, Relation::AtLeast, a1), "constant ground: cov(N) >= aleph_1");

  const auto high_b = random_extension_constraints(
      assignment({{Node::B, 2}, {Node::D, 2}, {Node::NonM, 2}, {Node::CofM, 2}, {Node::CofN, 2}}));
  t.expect(has_constraint(high_b, Node::CovN, Relation::AtLeast, a2), "ground b = aleph_2 forces cov(N) >= aleph_2");

  const auto high_d = random_extension_constraints(
      assignment({{Node::D, 2}, {Node::NonN, 2}, {Node::CofM, 2}, {Node::CofN, 2}}));
  t.expect(has_constraint(high_d, Node::NonN, Relation::AtMost, a2), "ground d = non(N) = aleph_2 caps non(N)");

  const DiagramAssignment ground =
      assignment({{Node::NonM, 2}, {Node::CofM, 2}, {Node::CofN, 2}, {Node::CovStarN, 2}});
  DiagramAssignment ext = ground;
  ext[Node::CovN] = a2;
  t.expect(check_extension_pair(ground, ext).accepted, "cov*(N) > max{cov(N), b} target is accepted");
  DiagramAssignment moved = ext;
  moved[Node::B] = a2;
  moved[Node::D] = a2;
  t.expect(!check_extension_pair(ground, moved).accepted, "changing b is rejected");
  t.expect(check_extension_pair(DiagramAssignment::constant(a1), DiagramAssignment::constant(a1)).accepted,
           "constant pair is accepted");
  t.note(std::to_string(accepted) + " of 4096 two-label assignments accepted");
  return t.done();
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> all = {
      {1, "exact set algebra", 5, set_algebra},
      {2, "slalom bound", 5, slalom_bound},
      {3, "refinement soundness", 5, refinement_soundness},
      {4, "extension correctness", 30, extension_correctness},
      {5, "Tchebyshev oracle", 60, tchebyshev_oracle},
      {6, "null-avoidance certificate", 10, null_avoidance},
      {7, "phi_full identity", 0, phi_full_identity},
      {8, "centered compatibility", 0, centered_compatibility},
      {9, "SMZ translation", 0, smz_translation},
      {10, "rapid-filter bounds", 0, rapid_filter},
      {11, "diagram checker", 0, diagram_checker},
  };
  return all;
}

CriterionResult run_criterion(const Criterion& c, std::uint64_t seed) {
  CriterionResult r;
  r.id = c.id;
  r.name = c.name;
  r.limit_seconds = c.limit_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = c.run(seed);
    r.passed = o.passed;
    r.detail = std::move(o.detail);
  } catch (const Error& e) {
    r.passed = false;
    r.detail = std::string("error ") + std::string(to_string(e.kind())) + ": " + e.what();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.limit_seconds > 0 && r.seconds >= r.limit_seconds) {
    r.passed = false;
    r.detail += "; exceeded time limit";
  }
  return r;
}

std::string format_result(const CriterionResult& r, bool with_time) {
  char head[96];
  std::snprintf(head, sizeof head, "%s  %2d  %-28s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str());
  std::string line = head;
  if (with_time) {
    char time[64];
    if (r.limit_seconds > 0) {
      std::snprintf(time, sizeof time, "  %7.3f s / %g s", r.seconds, r.limit_seconds);
    } else {
      std::snprintf(time, sizeof time, "  %7.3f s", r.seconds);
    }
    line += time;
  }
  return line + "  " + r.detail;
}

}  // namespace forcing_lab::checks
