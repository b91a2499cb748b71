#include "forcing_lab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <stdexcept>

#include "forcing_lab/diagram.hpp"
#include "forcing_lab/error.hpp"
#include "forcing_lab/json_io.hpp"
#include "forcing_lab/name_calculus.hpp"
#include "forcing_lab/poset.hpp"
#include "forcing_lab/smz_rapid.hpp"

namespace forcing_lab {

using nlohmann::json;
namespace io = json_io;

namespace {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Key-checked view of a params object: unknown keys are rejected once the
// handler has taken everything it understands.
class Params {
 public:
  Params(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw SchemaError(where_ + " must be an object");
  }

  const json& required(const char* key) {
    taken_.insert(key);
    if (!j_.contains(key)) throw SchemaError(where_ + " is missing '" + key + "'");
    return j_.at(key);
  }
  const json* optional(const char* key) {
    taken_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }
  std::uint64_t natural(const char* key) { return as_natural(required(key), key); }
  std::uint64_t natural_or(const char* key, std::uint64_t fallback) {
    const json* v = optional(key);
    return v == nullptr ? fallback : as_natural(*v, key);
  }
  Params object(const char* key) { return Params(required(key), where_ + "." + key); }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (taken_.count(key) == 0) throw SchemaError(where_ + " has unknown key '" + key + "'");
    }
  }

  std::uint64_t as_natural(const json& v, const char* key) const {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    throw SchemaError(where_ + "." + key + " must be a natural number");
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> taken_;
};

struct Context {
  std::optional<std::uint64_t> seed;
  ScenarioOverrides overrides;
  json outputs = json::object();
  json checks = json::array();

  void check(const char* name, bool passed) { checks.push_back({{"name", name}, {"passed", passed}}); }
};

DepthRule parse_rule(const json* j, DepthRule fallback) {
  if (j == nullptr) return fallback;
  if (*j == "chebyshev") return DepthRule::Chebyshev;
  if (*j == "shallowest") return DepthRule::Shallowest;
  throw SchemaError("rule must be \"chebyshev\" or \"shallowest\"");
}

std::set<std::uint64_t> decode_natural_spec(const json& j) {
  // Either an explicit array or {"cubes": k} for {i^3 : i < k}.
  if (j.is_object()) {
    Params p(j, "natural set");
    const std::uint64_t k = p.natural("cubes");
    p.finish();
    std::set<std::uint64_t> out;
    for (std::uint64_t i = 0; i < k; ++i) out.insert(i * i * i);
    return out;
  }
  return io::decode_natural_set(j);
}

void run_slalom(Params& params, Context& ctx) {
  const FiniteName g = io::decode_name(params.required("name"));
  params.finish();
  const Slalom s = slalom_extract(g);
  bool strict = true;
  for (std::size_t n = 0; n < s.horizon(); ++n) strict = strict && s.slot(n).size() < (n + 1) * (n + 1);
  ctx.outputs["slalom"] = io::encode(s);
  ctx.check("strict-bound", strict);
}

void run_refine(Params& params, Context& ctx) {
  const ClopenSet p = io::decode_clopen(params.required("p"));
  const FiniteName g = io::decode_name(params.required("name"));
  const std::vector<std::uint64_t> f = io::decode_natural_list(params.required("f"));
  const std::uint64_t n0 = params.natural("N");
  params.finish();
  const Refinement r = refine_condition(p, g, f, n0);
  bool disjoint = true;
  for (std::size_t k = r.n; k < g.horizon(); ++k) {
    disjoint = disjoint && r.q.disjoint_from(boolean_value(g, k, f[k]));
  }
  ctx.outputs["q"] = io::encode(r.q);
  ctx.outputs["n"] = r.n;
  ctx.outputs["measure_q"] = io::encode(r.q.measure());
  ctx.outputs["guaranteed_measure"] = io::encode(r.guaranteed_measure);
  ctx.check("positive-measure", r.q.measure() > Rational(0));
  ctx.check("disjoint-from-subtracted", disjoint);
  ctx.check("inside-p", r.q.subset_of(p));
  ctx.check("meets-guarantee", r.q.measure() >= r.guaranteed_measure);
}

void run_extend(Params& params, Context& ctx) {
  const Condition p = io::decode_condition(params.required("condition"));
  ExtendOptions options;
  options.seed = *ctx.seed;
  options.rule = parse_rule(params.optional("rule"), DepthRule::Chebyshev);
  options.retry_cap = ctx.overrides.retry_cap.value_or(params.natural_or("retry_cap", options.retry_cap));
  options.exhaustive_cap =
      ctx.overrides.exhaustive_cap.value_or(params.natural_or("exhaustive_cap", options.exhaustive_cap));
  options.max_depth = static_cast<int>(params.natural_or("max_depth", static_cast<std::uint64_t>(options.max_depth)));
  params.finish();

  const ExtendResult r = extend(p, options);
  const Condition& q = r.condition;
  bool grew = true;
  const int m = p.depth();
  for (std::size_t x = 0; x < q.h.top().size(); ++x) {
    const BinaryString& base = p.h.top()[x >> (q.depth() - m)];
    grew = grew && q.h.top()[x].length() == base.length() + 1;
  }
  ctx.outputs["condition"] = io::encode(q);
  ctx.outputs["depth"] = q.depth();
  ctx.outputs["chebyshev_depth"] = r.stats.chebyshev_depth;
  ctx.outputs["delta"] = io::encode(r.stats.delta);
  ctx.outputs["samples"] = r.stats.samples;
  ctx.outputs["exhaustive_searches"] = r.stats.exhaustive_searches;
  ctx.check("valid", validate(q).valid);
  ctx.check("extends-input", stronger_or_equal(q, p));
  ctx.check("one-bit-growth", grew);
}

void run_generic(Params& params, Context& ctx) {
  const std::uint64_t steps = params.natural("steps");
  std::vector<ScheduledCover> schedule;
  if (const json* s = params.optional("schedule")) {
    if (!s->is_array()) throw SchemaError("params.schedule must be an array");
    for (const auto& entry : *s) {
      Params e(entry, "schedule entry");
      ScheduledCover c;
      c.at_step = e.natural_or("at_step", 0);
      c.cover = io::decode_plane(e.required("cover"));
      c.epsilon = io::decode_rational(e.required("eps"));
      e.finish();
      schedule.push_back(std::move(c));
    }
  }
  GenericRunOptions options;
  options.seed = *ctx.seed;
  options.rule = parse_rule(params.optional("rule"), DepthRule::Shallowest);
  options.retry_cap = ctx.overrides.retry_cap.value_or(params.natural_or("retry_cap", options.retry_cap));
  options.exhaustive_cap =
      ctx.overrides.exhaustive_cap.value_or(params.natural_or("exhaustive_cap", options.exhaustive_cap));
  options.max_depth = static_cast<int>(params.natural_or("max_depth", static_cast<std::uint64_t>(options.max_depth)));
  params.finish();

  const GenericRunResult r = generic_run(schedule, steps, options);
  const Condition& q = r.final_condition;
  // Final certificates, with inside = scoreF wherever q is as fine as F.
  json finals = json::array();
  bool equal_at_full_depth = true;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i].at_step > steps) continue;
    const ClopenPlaneSet f = schedule[i].cover.complement();
    const Certificate c = certificate(q, f);
    bool full = q.depth() >= f.resolution().x;
    for (const auto& hs : q.h.top()) full = full && hs.length() >= f.resolution().y;
    if (full) equal_at_full_depth = equal_at_full_depth && c.inside == c.score;
    finals.push_back({{"index", i},
                      {"inside", io::encode(c.inside)},
                      {"scoreF", io::encode(c.score)},
                      {"threshold", io::encode(Rational(1) - schedule[i].epsilon)},
                      {"full_depth", full}});
  }
  ctx.outputs["final_condition"] = io::encode(q);
  ctx.outputs["depth"] = q.depth();
  ctx.outputs["trace"] = io::encode(r.trace);
  ctx.outputs["final_certificates"] = finals;
  ctx.check("certificates-above-threshold", r.invariant_held);
  ctx.check("final-valid", validate(q).valid);
  ctx.check("full-depth-equality", equal_at_full_depth);
}

std::vector<Rational> smz_epsilons(Params& params, std::size_t horizon) {
  const json* list = params.optional("eps");
  const json* geometric = params.optional("eps_geometric");
  if ((list == nullptr) == (geometric == nullptr)) {
    throw SchemaError("params needs exactly one of 'eps' and 'eps_geometric'");
  }
  if (list != nullptr) return io::decode_rationals(*list);
  Params g(*geometric, "params.eps_geometric");
  Rational term = io::decode_rational(g.required("first"));
  const Rational ratio = io::decode_rational(g.required("ratio"));
  g.finish();
  std::vector<Rational> out;
  for (std::size_t n = 0; n <= horizon * horizon * horizon; ++n) {
    out.push_back(term);
    term *= ratio;
  }
  return out;
}

void run_smz(Params& params, Context& ctx) {
  const std::size_t horizon = params.natural("horizon");
  const std::vector<Rational> eps = smz_epsilons(params, horizon);
  const json* families_json = params.optional("families");
  const json* synthetic = params.optional("synthetic");
  if (synthetic != nullptr && !synthetic->is_boolean()) throw SchemaError("params.synthetic must be a boolean");
  params.finish();

  const CoverTranslation ct = cover_translate(eps, horizon);
  bool nonincreasing = true, below = true;
  for (std::size_t n = 0; n < horizon; ++n) {
    if (n > 0) nonincreasing = nonincreasing && ct.delta[n] <= ct.delta[n - 1];
    below = below && ct.delta_prime[n] < ct.delta[n];
  }
  ctx.outputs["delta"] = io::encode_rationals(ct.delta);
  ctx.outputs["delta_prime"] = io::encode_rationals(ct.delta_prime);
  ctx.check("delta-nonincreasing", nonincreasing);
  ctx.check("delta-prime-below-delta", below);

  std::vector<std::vector<IntervalSpec>> families;
  if (families_json != nullptr) {
    if (!families_json->is_array()) throw SchemaError("params.families must be an array");
    for (const auto& fam : *families_json) {
      if (!fam.is_array()) throw SchemaError("each family must be an array of intervals");
      std::vector<IntervalSpec> family;
      for (const auto& iv : fam) family.push_back(io::decode_interval(iv));
      families.push_back(std::move(family));
    }
  } else if (synthetic != nullptr && synthetic->get<bool>()) {
    // The largest allowed family at each level, laid out from 0.
    for (std::size_t n = 0; n < horizon; ++n) {
      std::vector<IntervalSpec> family;
      for (std::uint64_t k = 0; k + 1 < (n + 1) * (n + 1); ++k) family.push_back(partition_piece(ct.delta_prime[n], k));
      families.push_back(std::move(family));
    }
  }
  if (families_json != nullptr || (synthetic != nullptr && synthetic->get<bool>())) {
    const std::vector<IntervalSpec> j = flatten_heavy_intervals(families, eps);
    json out = json::array();
    bool bounded = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(io::encode(j[i]));
      bounded = bounded && j[i].length() <= eps[i];
    }
    ctx.outputs["J"] = out;
    ctx.check("length-bounds", bounded);
  }
}

void run_rapid(Params& params, Context& ctx) {
  const json* profile = params.optional("profile");
  const json* thin = params.optional("thin");
  const json* product = params.optional("product");
  const json* rapidity = params.optional("rapidity");
  params.finish();
  if (!profile && !thin && !product && !rapidity) {
    throw SchemaError("params needs at least one of profile, thin, product, rapidity");
  }
  if (profile != nullptr) {
    Params p(*profile, "params.profile");
    const auto a = decode_natural_spec(p.required("A"));
    const std::size_t horizon = p.natural("horizon");
    p.finish();
    const auto values = density_profile(a, horizon);
    bool unit = std::all_of(values.begin(), values.end(),
                            [](const Rational& v) { return v >= Rational(0) && v <= Rational(1); });
    ctx.outputs["profile"] = io::encode_rationals(values);
    ctx.check("profile-in-unit-interval", unit);
  }
  if (thin != nullptr) {
    Params p(*thin, "params.thin");
    const auto a = decode_natural_spec(p.required("A"));
    const std::size_t horizon = p.natural("horizon");
    p.finish();
    const ThinSetVerdict v = thin_set_bound_check(a, horizon);
    json out{{"holds", v.holds},
             {"max_value", io::encode(v.max_value)},
             {"max_ratio_to_bound", io::encode(v.max_ratio_to_bound)}};
    out["first_violation"] = v.first_violation ? json(*v.first_violation) : json(nullptr);
    ctx.outputs["thin"] = out;
    ctx.check("thin-bound", v.holds);
  }
  if (product != nullptr) {
    Params p(*product, "params.product");
    const auto a = decode_natural_spec(p.required("A"));
    const auto x = io::decode_natural_set(p.required("X"));
    const std::size_t from = p.natural("from");
    const std::size_t horizon = p.natural("horizon");
    p.finish();
    if (from > horizon) throw Error(ErrorKind::PreconditionFailed, "product needs from <= horizon");
    json partials = json::array();
    bool antitone = true;
    Rational previous(1);
    for (std::size_t m = from; m <= horizon; ++m) {
      Rational now = product_bound(a, x, from, m);
      antitone = antitone && now <= previous;
      partials.push_back(io::encode(now));
      previous = now;
    }
    ctx.outputs["product"] = previous.to_string();
    ctx.outputs["partial_products"] = partials;
    ctx.check("product-antitone", antitone);
  }
  if (rapidity != nullptr) {
    Params p(*rapidity, "params.rapidity");
    const auto r = io::decode_natural_list(p.required("r"));
    const auto x = io::decode_natural_set(p.required("X"));
    const auto f = io::decode_natural_list(p.required("f"));
    p.finish();
    const RapidityVerdict v = rapidity_check(r, x, f);
    json out{{"holds", v.holds}, {"range", io::encode_naturals(v.range)}};
    out["first_violation"] = v.first_violation ? json(*v.first_violation) : json(nullptr);
    ctx.outputs["rapidity"] = out;
    ctx.check("rapidity", v.holds);
  }
}

json encode_violations(const DiagramVerdict& v) {
  json out = json::array();
  for (const auto& x : v.violations) out.push_back({{"rule", x.rule}, {"detail", x.detail}});
  return out;
}

void run_diagram(Params& params, Context& ctx) {
  const json* single = params.optional("assignment");
  const json* ground = params.optional("ground");
  const json* ext = params.optional("extension");
  params.finish();
  if ((single != nullptr) == (ground != nullptr) || (ext != nullptr && ground == nullptr)) {
    throw SchemaError("params needs 'assignment', or 'ground' with an optional 'extension'");
  }
  if (single != nullptr) {
    const DiagramVerdict v = check_assignment(io::decode_assignment(*single));
    ctx.outputs["accepted"] = v.accepted;
    ctx.outputs["violations"] = encode_violations(v);
    ctx.check("diagram-accepted", v.accepted);
    return;
  }
  const DiagramAssignment g = io::decode_assignment(*ground);
  const DiagramVerdict gv = check_assignment(g);
  if (!gv.accepted) {
    ctx.outputs["accepted"] = false;
    ctx.outputs["violations"] = encode_violations(gv);
    ctx.check("ground-accepted", false);
    return;
  }
  json constraints = json::array();
  for (const auto& c : random_extension_constraints(g)) {
    constraints.push_back({{"node", std::string(node_name(c.node))},
                           {"relation", std::string(relation_symbol(c.relation))},
                           {"bound", c.bound.to_string()},
                           {"reason", c.reason}});
  }
  ctx.outputs["constraints"] = constraints;
  ctx.check("ground-accepted", true);
  if (ext != nullptr) {
    const DiagramVerdict v = check_extension_pair(g, io::decode_assignment(*ext));
    ctx.outputs["accepted"] = v.accepted;
    ctx.outputs["violations"] = encode_violations(v);
    ctx.check("extension-accepted", v.accepted);
  }
}

using Handler = std::function<void(Params&, Context&)>;

const Handler* find_handler(std::string_view kind) {
  static const std::vector<std::pair<std::string_view, Handler>> handlers = {
      {"slalom", run_slalom}, {"refine", run_refine}, {"extend", run_extend},
      {"generic-run", run_generic}, {"smz", run_smz}, {"rapid", run_rapid},
      {"diagram", run_diagram},
  };
  for (const auto& [name, h] : handlers) {
    if (name == kind) return &h;
  }
  return nullptr;
}

json error_object(std::string_view kind, const std::string& detail) {
  return {{"kind", std::string(kind)}, {"detail", detail}};
}

}  // namespace

const std::vector<std::string_view>& scenario_kinds() {
  static const std::vector<std::string_view> kinds = {"slalom", "refine", "extend", "generic-run",
                                                      "smz",    "rapid",  "diagram"};
  return kinds;
}

bool kind_needs_seed(std::string_view kind) { return kind == "extend" || kind == "generic-run"; }

json ScenarioReport::document() const {
  json out = body;
  out["wall_time_ms"] = wall_time_ms;
  return out;
}

ScenarioReport run_scenario(const json& scenario, const ScenarioOverrides& overrides,
                            std::optional<std::string_view> expected_kind) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport report;
  json& body = report.body;
  body = {{"version", kScenarioVersion}, {"kind", nullptr},           {"seed", nullptr},
          {"inputs", nullptr},           {"outputs", json::object()}, {"checks", json::array()},
          {"status", "ok"},              {"error", nullptr}};
  Context ctx;
  ctx.overrides = overrides;
  try {
    Params top(scenario, "scenario");
    const json& version = top.required("version");
    if (!version.is_number_integer() || version.get<std::int64_t>() != kScenarioVersion) {
      throw SchemaError("unsupported scenario version " + version.dump());
    }
    const json& kind_json = top.required("kind");
    if (!kind_json.is_string()) throw SchemaError("scenario.kind must be a string");
    const std::string kind = kind_json.get<std::string>();
    const Handler* handler = find_handler(kind);
    if (handler == nullptr) throw SchemaError("unknown scenario kind '" + kind + "'");
    body["kind"] = kind;
    if (expected_kind && *expected_kind != kind) {
      throw SchemaError("scenario kind '" + kind + "' does not match subcommand '" + std::string(*expected_kind) + "'");
    }
    if (const json* s = top.optional("seed")) ctx.seed = top.as_natural(*s, "seed");
    if (overrides.seed) ctx.seed = overrides.seed;
    if (ctx.seed) body["seed"] = *ctx.seed;
    if (kind_needs_seed(kind) && !ctx.seed) throw SchemaError("scenario kind '" + kind + "' needs a seed");
    const json& params_json = top.required("params");
    top.finish();
    body["inputs"] = params_json;

    Params params(params_json, "params");
    (*handler)(params, ctx);
    body["outputs"] = ctx.outputs;
    body["checks"] = ctx.checks;
    bool all = std::all_of(ctx.checks.begin(), ctx.checks.end(), [](const json& c) { return c["passed"].get<bool>(); });
    if (!all) {
      body["status"] = "failed";
      report.exit_code = ExitCode::Failed;
    }
  } catch (const SchemaError& e) {
    body["status"] = "invalid";
    body["error"] = error_object("SchemaError", e.what());
    report.exit_code = ExitCode::SchemaError;
  } catch (const Error& e) {
    const bool schema = e.kind() == ErrorKind::ParseError;
    body["status"] = schema ? "invalid" : "error";
    body["error"] = error_object(to_string(e.kind()), e.detail());
    body["checks"] = ctx.checks;
    report.exit_code = schema ? ExitCode::SchemaError : ExitCode::Failed;
  } catch (const json::exception& e) {
    body["status"] = "invalid";
    body["error"] = error_object("SchemaError", e.what());
    report.exit_code = ExitCode::SchemaError;
  } catch (const std::exception& e) {
    body["status"] = "error";
    body["error"] = error_object("InternalError", e.what());
    report.exit_code = ExitCode::Failed;
  }
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ScenarioReport run_scenario_text(std::string_view text, const ScenarioOverrides& overrides,
                                 std::optional<std::string_view> expected_kind) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    ScenarioReport report;
    report.exit_code = ExitCode::SchemaError;
    report.body = {{"version", kScenarioVersion}, {"kind", nullptr},           {"seed", nullptr},
                   {"inputs", nullptr},           {"outputs", json::object()}, {"checks", json::array()},
                   {"status", "invalid"},         {"error", error_object("SchemaError", e.what())}};
    return report;
  }
  return run_scenario(doc, overrides, expected_kind);
}

}  // namespace forcing_lab
