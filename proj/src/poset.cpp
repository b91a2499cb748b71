#include "forcing_lab/poset.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "forcing_lab/error.hpp"

namespace forcing_lab {

// ------------------------------------------------------------ WeightFunction

WeightFunction WeightFunction::from_table(PlaneResolution resolution, std::vector<Rational> table) {
  if (resolution.x < 0 || resolution.y < 0 || resolution.x + resolution.y > kMaxResolutionBits) {
    throw Error(ErrorKind::InvalidWeight, "weight resolution exceeds " +
                                              std::to_string(kMaxResolutionBits) + " bits");
  }
  const int bits = resolution.x + resolution.y;
  if (table.size() != (std::size_t{1} << bits)) {
    throw Error(ErrorKind::InvalidWeight, "table has " + std::to_string(table.size()) +
                                              " entries, expected 2^" + std::to_string(bits));
  }
  const Rational cap = Rational::pow2(-bits);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].sign() < 0 || table[i] > cap) {
      throw Error(ErrorKind::InvalidWeight, "entry " + std::to_string(i) + " = " +
                                                table[i].to_string() + " outside [0, " +
                                                cap.to_string() + "]");
    }
  }
  WeightFunction phi;
  phi.resolution_ = resolution;
  phi.build_levels(std::move(table));
  if (phi.total_mass().is_zero()) {
    throw Error(ErrorKind::InvalidWeight, "total mass phi(empty, empty) is zero");
  }
  return phi;
}

WeightFunction WeightFunction::full(PlaneResolution resolution) {
  const int bits = resolution.x + resolution.y;
  if (bits > kMaxResolutionBits || bits < 0) {
    throw Error(ErrorKind::InvalidWeight, "weight resolution too large");
  }
  return from_table(resolution, std::vector<Rational>(std::size_t{1} << bits, Rational::pow2(-bits)));
}

void WeightFunction::build_levels(std::vector<Rational> table) {
  const int mx = resolution_.x;
  const int my = resolution_.y;
  levels_.assign(static_cast<std::size_t>((mx + 1) * (my + 1)), {});
  levels_[level_index(mx, my)] = std::move(table);
  for (int i = mx; i >= 0; --i) {
    for (int j = my; j >= 0; --j) {
      if (i == mx && j == my) continue;
      auto& out = levels_[level_index(i, j)];
      out.resize(std::size_t{1} << (i + j));
      if (j < my) {
        const auto& finer = levels_[level_index(i, j + 1)];
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << i); ++a) {
          for (std::uint64_t b = 0; b < (std::uint64_t{1} << j); ++b) {
            out[(a << j) | b] = finer[(a << (j + 1)) | (b << 1)] + finer[(a << (j + 1)) | (b << 1) | 1];
          }
        }
      } else {
        const auto& finer = levels_[level_index(i + 1, j)];
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << i); ++a) {
          for (std::uint64_t b = 0; b < (std::uint64_t{1} << j); ++b) {
            out[(a << j) | b] = finer[((a << 1) << j) | b] + finer[(((a << 1) | 1) << j) | b];
          }
        }
      }
    }
  }
}

const Rational& WeightFunction::block(int x_bits, int y_bits, std::uint64_t a, std::uint64_t b) const {
  return levels_[level_index(x_bits, y_bits)][(a << y_bits) | b];
}

Rational WeightFunction::eval(const BinaryString& s, const BinaryString& t) const {
  const int i = std::min(s.length(), resolution_.x);
  const int j = std::min(t.length(), resolution_.y);
  const Rational& v = block(i, j, s.prefix(i).index(), t.prefix(j).index());
  return v.scaled_pow2(-((s.length() - i) + (t.length() - j)));
}

Rational eval_phi(const WeightFunction& phi, const BinaryString& s, const BinaryString& t) {
  return phi.eval(s, t);
}

WeightFunction phi_from_clopen(const ClopenPlaneSet& f) {
  if (f.empty()) {
    throw Error(ErrorKind::NullSet, "phi_F needs a set of positive measure");
  }
  const PlaneResolution r = f.resolution();
  const int bits = r.x + r.y;
  if (bits > WeightFunction::kMaxResolutionBits) {
    throw Error(ErrorKind::CapacityExceeded, "plane set too fine for a weight table");
  }
  std::vector<Rational> table(std::size_t{1} << bits);
  const Rational cell = Rational::pow2(-bits);
  for (std::uint64_t c : f.cells()) table[c] = cell;
  return WeightFunction::from_table(r, std::move(table));
}

TaggedWeight make_tagged(Rational epsilon, WeightFunction phi) {
  return TaggedWeight{std::move(epsilon), std::make_shared<const WeightFunction>(std::move(phi))};
}

// ---------------------------------------------------------------------- Stem

Stem::Stem() : levels_{{BinaryString{}}} {}

Stem Stem::from_levels(std::vector<std::vector<BinaryString>> levels) {
  if (levels.empty()) {
    throw Error(ErrorKind::InvalidCondition, "stem needs at least the root level");
  }
  if (static_cast<int>(levels.size()) - 1 > kMaxDepth) {
    throw Error(ErrorKind::CapacityExceeded, "stem depth exceeds " + std::to_string(kMaxDepth));
  }
  for (std::size_t d = 0; d < levels.size(); ++d) {
    if (levels[d].size() != (std::size_t{1} << d)) {
      throw Error(ErrorKind::InvalidCondition, "stem level " + std::to_string(d) + " is incomplete");
    }
  }
  Stem stem;
  stem.levels_ = std::move(levels);
  return stem;
}

Stem Stem::from_pairs(std::span<const std::pair<BinaryString, BinaryString>> pairs) {
  int depth = 0;
  for (const auto& [s, t] : pairs) depth = std::max(depth, s.length());
  if (depth > kMaxDepth) {
    throw Error(ErrorKind::CapacityExceeded, "stem depth exceeds " + std::to_string(kMaxDepth));
  }
  std::vector<std::vector<BinaryString>> levels(static_cast<std::size_t>(depth) + 1);
  std::vector<std::vector<bool>> seen(levels.size());
  for (std::size_t d = 0; d < levels.size(); ++d) {
    levels[d].resize(std::size_t{1} << d);
    seen[d].assign(std::size_t{1} << d, false);
  }
  for (const auto& [s, t] : pairs) {
    auto d = static_cast<std::size_t>(s.length());
    if (seen[d][s.index()]) {
      throw Error(ErrorKind::InvalidCondition, "h(" + s.to_string() + ") given twice");
    }
    seen[d][s.index()] = true;
    levels[d][s.index()] = t;
  }
  for (std::size_t d = 0; d < levels.size(); ++d) {
    for (std::size_t x = 0; x < seen[d].size(); ++x) {
      if (!seen[d][x]) {
        throw Error(ErrorKind::InvalidCondition,
                    "h undefined at '" + BinaryString::from_index(x, static_cast<int>(d)).to_string() + "'");
      }
    }
  }
  return from_levels(std::move(levels));
}

const BinaryString& Stem::at(const BinaryString& s) const {
  if (s.length() > depth()) {
    throw Error(ErrorKind::HorizonExceeded, "h undefined beyond depth " + std::to_string(depth()));
  }
  return levels_[static_cast<std::size_t>(s.length())][s.index()];
}

std::vector<std::pair<BinaryString, BinaryString>> Stem::pairs() const {
  std::vector<std::pair<BinaryString, BinaryString>> out;
  for (std::size_t d = 0; d < levels_.size(); ++d) {
    for (std::size_t x = 0; x < levels_[d].size(); ++x) {
      out.emplace_back(BinaryString::from_index(x, static_cast<int>(d)), levels_[d][x]);
    }
  }
  return out;
}

bool Stem::extends(const Stem& smaller) const {
  if (smaller.depth() > depth()) return false;
  return std::equal(smaller.levels_.begin(), smaller.levels_.end(), levels_.begin());
}

// --------------------------------------------------------------------- score

Rational score(const Stem& h, const WeightFunction& phi) {
  const int m = h.depth();
  const PlaneResolution r = phi.resolution();
  const int i = std::min(m, r.x);
  // Each term is block(i, j, s|i, h(s)|j) * 2^{j - (m - i)} with
  // j = min(|h(s)|, M2); count identical blocks before touching rationals.
  const std::size_t heap = std::size_t{1} << (r.y + 1);
  std::vector<std::uint64_t> counts((std::size_t{1} << i) * heap, 0);
  const auto& top = h.top();
  for (std::size_t x = 0; x < top.size(); ++x) {
    const BinaryString& t = top[x];
    const int j = std::min(t.length(), r.y);
    std::uint64_t a = x >> (m - i);
    std::uint64_t b = t.prefix(j).index();
    ++counts[a * heap + ((std::uint64_t{1} << j) | b)];
  }
  Rational total;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << i); ++a) {
    for (int j = 0; j <= r.y; ++j) {
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << j); ++b) {
        std::uint64_t c = counts[a * heap + ((std::uint64_t{1} << j) | b)];
        if (c == 0) continue;
        total += (phi.block(i, j, a, b) * Rational(static_cast<std::int64_t>(c))).scaled_pow2(j);
      }
    }
  }
  return total.scaled_pow2(-(m - i));
}

// ------------------------------------------------------------------ validate

ConditionVerdict validate(const Condition& p) {
  ConditionVerdict v;
  for (std::size_t k = 0; k < p.u.size(); ++k) {
    const Rational& eps = p.u[k].epsilon;
    if (eps.sign() <= 0 || eps >= Rational(1)) {
      v.valid = false;
      v.clause = "epsilon-range";
      v.detail = "epsilon " + eps.to_string() + " outside (0,1)";
      v.weight_index = k;
      return v;
    }
  }
  for (int d = 1; d <= p.h.depth(); ++d) {
    const auto& level = p.h.level(d);
    const auto& above = p.h.level(d - 1);
    for (std::size_t x = 0; x < level.size(); ++x) {
      const BinaryString& parent_value = above[x >> 1];
      if (!parent_value.is_prefix_of(level[x])) {
        BinaryString s = BinaryString::from_index(x, d);
        v.valid = false;
        v.clause = "monotonicity";
        v.detail = "h(" + s.parent().to_string() + ") is not a prefix of h(" + s.to_string() + ")";
        v.witness = {s.parent().to_string(), s.to_string(), parent_value.to_string(), level[x].to_string()};
        return v;
      }
    }
  }
  for (std::size_t k = 0; k < p.u.size(); ++k) {
    Rational sc = score(p.h, *p.u[k].phi);
    if (!(sc > p.u[k].epsilon)) {
      v.valid = false;
      v.clause = "score";
      v.detail = "score " + sc.to_string() + " <= epsilon " + p.u[k].epsilon.to_string();
      v.weight_index = k;
      v.witness = {sc.to_string(), p.u[k].epsilon.to_string()};
      return v;
    }
  }
  return v;
}

bool stronger_or_equal(const Condition& q, const Condition& p) {
  if (!q.h.extends(p.h)) return false;
  return std::all_of(p.u.begin(), p.u.end(), [&](const TaggedWeight& w) {
    return std::find(q.u.begin(), q.u.end(), w) != q.u.end();
  });
}

// -------------------------------------------------------------------- extend

double ExtendStats::mean_samples() const {
  if (samples.empty()) return 0.0;
  double total = 0;
  for (auto n : samples) total += static_cast<double>(n);
  return total / static_cast<double>(samples.size());
}

Rational extension_delta(const Condition& p) {
  if (p.u.empty()) {
    throw Error(ErrorKind::PreconditionFailed, "delta is undefined without constraints");
  }
  std::optional<Rational> slack;
  for (const auto& w : p.u) {
    Rational gap = score(p.h, *w.phi) - w.epsilon;
    if (!slack || gap < *slack) slack = gap;
  }
  Rational mass;
  for (const auto& t : p.h.top()) mass += Rational::pow2(1 + t.length());
  return *slack / (Rational(2) * mass);
}

int chebyshev_depth(int m, const Rational& delta, std::size_t n) {
  if (delta.sign() <= 0) {
    throw Error(ErrorKind::PreconditionFailed, "delta must be positive");
  }
  const Rational square = delta * delta;
  const Rational target(2 * static_cast<std::int64_t>(n));
  int depth = m + 1;
  while (!(square.scaled_pow2(depth) > target)) ++depth;
  return depth;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sub_seed(std::uint64_t seed, int m, std::uint64_t s_index) {
  return splitmix64(splitmix64(seed ^ (static_cast<std::uint64_t>(m) << 56)) ^ splitmix64(s_index));
}

std::uint64_t popcount_range(std::span<const std::uint64_t> words, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t count = 0;
  while (lo < hi) {
    std::uint64_t word = lo >> 6;
    std::uint64_t offset = lo & 63U;
    std::uint64_t take = std::min<std::uint64_t>(64 - offset, hi - lo);
    std::uint64_t mask = take == 64 ? ~std::uint64_t{0} : (((std::uint64_t{1} << take) - 1) << offset);
    count += static_cast<std::uint64_t>(std::popcount(words[word] & mask));
    lo += take;
  }
  return count;
}

// Y_phi as an affine function of the number of ones per group of
// extensions t of s that see the same table block:
//   Y * 2^scale = base + sum_g ones_g * diff_g.
struct OtimesForm {
  int free_bits = 0;
  int group_bits = 0;
  Rational base;
  std::vector<Rational> diff;
  Rational rhs;  // (phi(s,h(s))/2 - delta) * 2^scale

  bool holds(std::span<const std::uint64_t> e) const {
    Rational y = base;
    const std::uint64_t size = std::uint64_t{1} << (free_bits - group_bits);
    for (std::size_t g = 0; g < diff.size(); ++g) {
      if (diff[g].is_zero()) continue;
      std::uint64_t ones = popcount_range(e, g * size, (g + 1) * size);
      if (ones != 0) y += diff[g] * Rational(static_cast<std::int64_t>(ones));
    }
    return y > rhs;
  }
};

OtimesForm make_form(const WeightFunction& phi, const BinaryString& s, const BinaryString& hs,
                     int target, const Rational& delta) {
  const int m = s.length();
  const PlaneResolution r = phi.resolution();
  OtimesForm form;
  form.free_bits = target - m;
  const int i = std::min(target, r.x);
  form.group_bits = i > m ? i - m : 0;
  const int ly = hs.length() + 1;
  const int j = std::min(ly, r.y);
  std::uint64_t b0 = 0;
  std::uint64_t b1 = 0;
  if (ly <= r.y) {
    b0 = hs.child(0).index();
    b1 = hs.child(1).index();
  } else {
    b0 = b1 = hs.prefix(r.y).index();
  }
  const int scale = (target - i) + (ly - j);
  const std::uint64_t groups = std::uint64_t{1} << form.group_bits;
  const auto size = static_cast<std::int64_t>(std::uint64_t{1} << (form.free_bits - form.group_bits));
  form.diff.reserve(groups);
  for (std::uint64_t g = 0; g < groups; ++g) {
    std::uint64_t a = i > m ? ((s.index() << form.group_bits) | g) : s.prefix(i).index();
    const Rational& v0 = phi.block(i, j, a, b0);
    const Rational& v1 = phi.block(i, j, a, b1);
    form.base += v0 * Rational(size);
    form.diff.push_back(v1 - v0);
  }
  form.rhs = (phi.eval(s, hs).scaled_pow2(-1) - delta).scaled_pow2(scale);
  return form;
}

std::vector<OtimesForm> forms_for(const Condition& p, const BinaryString& s, int target,
                                  const Rational& delta) {
  std::vector<OtimesForm> forms;
  forms.reserve(p.u.size());
  const BinaryString& hs = p.h.at(s);
  for (const auto& w : p.u) forms.push_back(make_form(*w.phi, s, hs, target, delta));
  return forms;
}

// Index of the first weight whose inequality fails, or -1.
int first_failure(const std::vector<OtimesForm>& forms, std::span<const std::uint64_t> e) {
  for (std::size_t k = 0; k < forms.size(); ++k) {
    if (!forms[k].holds(e)) return static_cast<int>(k);
  }
  return -1;
}

bool exhaustive_feasible(int free_bits, std::uint64_t cap) {
  if (free_bits > 5) return false;
  const int width = 1 << free_bits;
  return width < 64 && (std::uint64_t{1} << width) <= cap;
}

std::optional<std::uint64_t> search_exhaustive(const std::vector<OtimesForm>& forms, int free_bits) {
  const std::uint64_t count = std::uint64_t{1} << (1 << free_bits);
  for (std::uint64_t e = 0; e < count; ++e) {
    if (first_failure(forms, std::span(&e, 1)) < 0) return e;
  }
  return std::nullopt;
}

Stem build_extension(const Stem& h, int target, const std::vector<std::vector<std::uint64_t>>& choice) {
  const int m = h.depth();
  std::vector<std::vector<BinaryString>> levels;
  levels.reserve(static_cast<std::size_t>(target) + 1);
  for (int d = 0; d <= m; ++d) levels.push_back(h.level(d));
  const auto& top = h.top();
  for (int d = m + 1; d <= target; ++d) {
    std::vector<BinaryString> level(std::size_t{1} << d);
    const int below = d - m;
    const std::uint64_t wmask = (std::uint64_t{1} << below) - 1;
    for (std::uint64_t x = 0; x < level.size(); ++x) {
      const BinaryString& base = top[x >> below];
      if (d < target) {
        level[x] = base;
      } else {
        std::uint64_t w = x & wmask;
        int bit = static_cast<int>((choice[x >> below][w >> 6] >> (w & 63U)) & 1U);
        level[x] = base.child(bit);
      }
    }
    levels.push_back(std::move(level));
  }
  return Stem::from_levels(std::move(levels));
}

ExtendResult finish(const Condition& p, int target, const std::vector<std::vector<std::uint64_t>>& choice,
                    ExtendStats stats) {
  Condition q{build_extension(p.h, target, choice), p.u};
  ConditionVerdict verdict = validate(q);
  if (!verdict.valid) {
    throw Error(ErrorKind::InvalidCondition, "extension failed exact re-validation: " + verdict.detail);
  }
  stats.to_depth = target;
  return ExtendResult{std::move(q), std::move(stats)};
}

}  // namespace

bool satisfies_otimes(const Condition& p, const BinaryString& s, int target_depth,
                      std::span<const std::uint64_t> e, const Rational& delta,
                      std::size_t weight_index) {
  if (s.length() != p.depth() || target_depth <= p.depth()) {
    throw Error(ErrorKind::PreconditionFailed, "s must lie on the top level and target beyond it");
  }
  const OtimesForm form = make_form(*p.u.at(weight_index).phi, s, p.h.at(s), target_depth, delta);
  const std::uint64_t bits = std::uint64_t{1} << form.free_bits;
  if (e.size() * 64 < bits) {
    throw Error(ErrorKind::PreconditionFailed, "e has fewer bits than extensions of s");
  }
  return form.holds(e);
}

ExtendResult extend(const Condition& p, const ExtendOptions& options) {
  ConditionVerdict verdict = validate(p);
  if (!verdict.valid) {
    throw Error(ErrorKind::InvalidCondition, verdict.clause + ": " + verdict.detail);
  }
  const int m = p.depth();
  const std::size_t top_size = std::size_t{1} << m;
  ExtendStats stats;
  stats.from_depth = m;

  if (p.u.empty()) {
    if (m + 1 > options.max_depth) {
      throw Error(ErrorKind::CapacityExceeded, "extension depth exceeds max_depth");
    }
    stats.chebyshev_depth = m + 1;
    std::vector<std::vector<std::uint64_t>> zero(top_size, std::vector<std::uint64_t>(1, 0));
    return finish(p, m + 1, zero, std::move(stats));
  }

  stats.delta = extension_delta(p);
  stats.chebyshev_depth = chebyshev_depth(m, stats.delta, p.u.size());
  std::vector<std::vector<std::uint64_t>> choice(top_size);

  if (options.rule == DepthRule::Shallowest) {
    for (int target = m + 1; target < stats.chebyshev_depth && target <= options.max_depth; ++target) {
      const int free_bits = target - m;
      if (!exhaustive_feasible(free_bits, options.exhaustive_cap)) break;
      bool all_found = true;
      for (std::size_t x = 0; x < top_size && all_found; ++x) {
        auto forms = forms_for(p, BinaryString::from_index(x, m), target, stats.delta);
        auto found = search_exhaustive(forms, free_bits);
        if (found) {
          choice[x] = {*found};
        } else {
          all_found = false;
        }
      }
      if (all_found) {
        stats.samples.assign(top_size, 0);
        stats.exhaustive_searches = top_size;
        return finish(p, target, choice, std::move(stats));
      }
    }
  }

  const int target = stats.chebyshev_depth;
  if (target > options.max_depth) {
    throw Error(ErrorKind::CapacityExceeded, "Chebyshev depth " + std::to_string(target) +
                                                 " exceeds max_depth " + std::to_string(options.max_depth));
  }
  const int free_bits = target - m;
  const std::uint64_t bits = std::uint64_t{1} << free_bits;
  const std::size_t words = static_cast<std::size_t>((bits + 63) / 64);
  const std::uint64_t last_mask = (bits & 63U) == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (bits & 63U)) - 1);
  stats.samples.assign(top_size, 0);

  for (std::size_t x = 0; x < top_size; ++x) {
    const BinaryString s = BinaryString::from_index(x, m);
    auto forms = forms_for(p, s, target, stats.delta);
    std::mt19937_64 rng(sub_seed(options.seed, m, x));
    std::vector<std::uint64_t> e(words);
    int failing = -1;
    bool found = false;
    for (std::uint64_t attempt = 0; attempt < options.retry_cap; ++attempt) {
      for (auto& word : e) word = rng();
      e.back() &= last_mask;
      ++stats.samples[x];
      failing = first_failure(forms, e);
      if (failing < 0) {
        found = true;
        break;
      }
    }
    if (!found && exhaustive_feasible(free_bits, options.exhaustive_cap)) {
      ++stats.exhaustive_searches;
      if (auto hit = search_exhaustive(forms, free_bits)) {
        e.assign(1, *hit);
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorKind::SearchExhausted,
                  "no map e for s='" + s.to_string() + "' (weight " + std::to_string(failing) +
                      " fails) within retry and exhaustive caps");
    }
    choice[x] = std::move(e);
  }
  return finish(p, target, choice, std::move(stats));
}

// ---------------------------------------------------- weights and null sets

Condition attach_weight(const Condition& p, const Rational& epsilon, const WeightFunction& phi) {
  if (epsilon.sign() <= 0 || epsilon >= Rational(1)) {
    throw Error(ErrorKind::InvalidEpsilon, "epsilon " + epsilon.to_string() + " outside (0,1)");
  }
  ConditionVerdict verdict = validate(p);
  if (!verdict.valid) {
    throw Error(ErrorKind::InvalidCondition, verdict.clause + ": " + verdict.detail);
  }
  Rational sc = score(p.h, phi);
  if (!(sc > epsilon)) {
    throw Error(ErrorKind::ScoreTooLow,
                "score " + sc.to_string() + " <= epsilon " + epsilon.to_string());
  }
  Condition q = p;
  q.u.push_back(make_tagged(epsilon, phi));
  return q;
}

Condition avoid_null(const Condition& p, const ClopenPlaneSet& cover, const Rational& epsilon) {
  if (epsilon.sign() <= 0 || epsilon >= Rational(1)) {
    throw Error(ErrorKind::InvalidEpsilon, "epsilon " + epsilon.to_string() + " outside (0,1)");
  }
  return attach_weight(p, Rational(1) - epsilon, phi_from_clopen(cover.complement()));
}

Certificate certificate(const Condition& p, const ClopenPlaneSet& f) {
  const int m = p.depth();
  const auto& top = p.h.top();
  std::int64_t inside = 0;
  for (std::size_t x = 0; x < top.size(); ++x) {
    if (f.contains_rect(BinaryString::from_index(x, m), top[x])) ++inside;
  }
  Certificate cert;
  cert.inside = Rational(inside).scaled_pow2(-m);
  cert.score = f.empty() ? Rational(0) : score(p.h, phi_from_clopen(f));
  return cert;
}

// --------------------------------------------------------------- generic run

GenericRunResult generic_run(std::span<const ScheduledCover> schedule, std::size_t steps,
                             const GenericRunOptions& options) {
  for (const auto& entry : schedule) {
    if (entry.at_step > steps) {
      throw Error(ErrorKind::PreconditionFailed, "cover scheduled after the last step");
    }
  }
  GenericRunResult result;
  result.seed = options.seed;
  Condition current;
  std::vector<std::pair<ClopenPlaneSet, Rational>> attached;  // (F, 1 - eps)

  auto record = [&](std::size_t step, const char* action) {
    TraceEntry entry;
    entry.step = step;
    entry.action = action;
    entry.depth = current.depth();
    for (std::size_t k = 0; k < attached.size(); ++k) {
      Certificate cert = certificate(current, attached[k].first);
      if (!(cert.score > attached[k].second)) result.invariant_held = false;
      entry.certificates.push_back({k, cert.inside, cert.score, attached[k].second});
    }
    result.trace.push_back(std::move(entry));
  };

  auto rethrow_at = [](std::size_t step, const Error& err) {
    throw Error(err.kind(), "step " + std::to_string(step) + ": " + err.detail());
  };

  for (std::size_t step = 0; step <= steps; ++step) {
    for (const auto& entry : schedule) {
      if (entry.at_step != step) continue;
      try {
        current = avoid_null(current, entry.cover, entry.epsilon);
      } catch (const Error& err) {
        rethrow_at(step, err);
      }
      attached.emplace_back(entry.cover.complement(), Rational(1) - entry.epsilon);
      record(step, "attach");
    }
    if (step == steps) break;
    ExtendOptions ext;
    ext.seed = sub_seed(options.seed, -1, step);
    ext.retry_cap = options.retry_cap;
    ext.exhaustive_cap = options.exhaustive_cap;
    ext.rule = options.rule;
    ext.max_depth = options.max_depth;
    try {
      current = extend(current, ext).condition;
    } catch (const Error& err) {
      rethrow_at(step, err);
    }
    record(step, "extend");
  }
  result.final_condition = std::move(current);
  return result;
}

// ---------------------------------------------------------- centered pieces

CenteredIndex sigma_centered_index(const Condition& p) {
  CenteredIndex index;
  index.n = p.u.size();
  index.h = p.h;
  index.k = 1;
  for (const auto& w : p.u) {
    index.epsilons.push_back(w.epsilon);
    Rational slack = score(p.h, *w.phi) - w.epsilon;
    if (slack.sign() <= 0) {
      throw Error(ErrorKind::InvalidCondition, "score does not exceed epsilon");
    }
    index.k = std::max({index.k, w.phi->total_mass().reciprocal().ceil(), slack.reciprocal().ceil()});
  }
  return index;
}

Condition merge_centered(const Condition& a, const Condition& b) {
  if (!(a.h == b.h)) {
    throw Error(ErrorKind::PreconditionFailed, "conditions do not share a stem");
  }
  Condition merged = a;
  for (const auto& w : b.u) {
    if (std::find(merged.u.begin(), merged.u.end(), w) == merged.u.end()) merged.u.push_back(w);
  }
  return merged;
}

}  // namespace forcing_lab
