#include "forcing_lab/json_io.hpp"

#include "forcing_lab/error.hpp"

namespace forcing_lab::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::uint64_t natural(const json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    bad("expected a natural number, got " + j.dump());
  }
  return j.get<std::uint64_t>();
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

PlaneResolution decode_resolution(const json& j) {
  const json& r = array(j, "resolution");
  if (r.size() != 2) bad("resolution must have two entries");
  return {static_cast<int>(natural(r[0])), static_cast<int>(natural(r[1]))};
}

}  // namespace

json encode(const Rational& r) { return r.to_string(); }

Rational decode_rational(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  bad("expected a rational as \"p/q\", got " + j.dump());
}

json encode(const BinaryString& s) { return s.to_string(); }

BinaryString decode_string(const json& j) {
  if (!j.is_string()) bad("expected a binary string, got " + j.dump());
  return BinaryString::parse(j.get<std::string>());
}

json encode(const ClopenSet& set) {
  json out = json::array();
  for (const auto& g : set.generators()) out.push_back(encode(g));
  return out;
}

ClopenSet decode_clopen(const json& j) {
  std::vector<BinaryString> gens;
  for (const auto& g : array(j, "clopen set")) gens.push_back(decode_string(g));
  return ClopenSet::canonicalize(std::move(gens));
}

json encode(const ClopenPlaneSet& set) {
  json rects = json::array();
  for (const auto& [s, t] : set.rects()) rects.push_back(json::array({encode(s), encode(t)}));
  return json{{"resolution", json::array({set.resolution().x, set.resolution().y})}, {"rects", rects}};
}

ClopenPlaneSet decode_plane(const json& j) {
  std::vector<std::pair<BinaryString, BinaryString>> rects;
  for (const auto& r : array(field(j, "rects"), "rects")) {
    if (!r.is_array() || r.size() != 2) bad("rectangle must be [s, t]");
    rects.emplace_back(decode_string(r[0]), decode_string(r[1]));
  }
  if (j.contains("resolution")) return ClopenPlaneSet::from_rects_at(decode_resolution(j.at("resolution")), rects);
  return ClopenPlaneSet::from_rects(rects);
}

json encode(const FiniteName& name) {
  json coords = json::array();
  for (const auto& partition : name.coordinates()) {
    json cells = json::array();
    for (const auto& cell : partition) cells.push_back({{"label", cell.label}, {"cells", encode(cell.value)}});
    coords.push_back(cells);
  }
  return json{{"horizon", name.horizon()}, {"coords", coords}};
}

FiniteName decode_name(const json& j) {
  std::vector<LabeledPartition> coords;
  for (const auto& partition : array(field(j, "coords"), "coords")) {
    LabeledPartition cells;
    for (const auto& cell : array(partition, "coordinate")) {
      cells.push_back({natural(field(cell, "label")), decode_clopen(field(cell, "cells"))});
    }
    coords.push_back(std::move(cells));
  }
  if (j.contains("horizon") && natural(j.at("horizon")) != coords.size()) {
    bad("horizon does not match the number of coordinates");
  }
  return make_name(std::move(coords));
}

json encode(const Slalom& slalom) {
  json slots = json::array();
  for (const auto& slot : slalom.slots()) slots.push_back(encode_naturals(slot));
  return json{{"slots", slots}};
}

Slalom decode_slalom(const json& j) {
  std::vector<std::set<std::uint64_t>> slots;
  for (const auto& slot : array(field(j, "slots"), "slots")) slots.push_back(decode_natural_set(slot));
  return Slalom(std::move(slots));
}

json encode(const WeightFunction& phi) {
  return json{{"resolution", json::array({phi.resolution().x, phi.resolution().y})},
              {"table", encode_rationals(phi.table())}};
}

WeightFunction decode_weight(const json& j) {
  return WeightFunction::from_table(decode_resolution(field(j, "resolution")),
                                    decode_rationals(field(j, "table")));
}

json encode(const Condition& p) {
  json h = json::array();
  for (const auto& [s, t] : p.h.pairs()) h.push_back(json::array({encode(s), encode(t)}));
  json u = json::array();
  for (const auto& w : p.u) u.push_back({{"eps", encode(w.epsilon)}, {"phi", encode(*w.phi)}});
  return json{{"m", p.depth()}, {"h", h}, {"u", u}};
}

Condition decode_condition(const json& j) {
  Condition p;
  if (j.contains("h")) {
    std::vector<std::pair<BinaryString, BinaryString>> pairs;
    for (const auto& entry : array(j.at("h"), "h")) {
      if (!entry.is_array() || entry.size() != 2) bad("h entries must be [s, t]");
      pairs.emplace_back(decode_string(entry[0]), decode_string(entry[1]));
    }
    p.h = Stem::from_pairs(pairs);
  }
  if (j.contains("m") && static_cast<int>(natural(j.at("m"))) != p.depth()) {
    bad("m does not match the depth of h");
  }
  if (j.contains("u")) {
    for (const auto& w : array(j.at("u"), "u")) {
      p.u.push_back(make_tagged(decode_rational(field(w, "eps")), decode_weight(field(w, "phi"))));
    }
  }
  return p;
}

json encode(const std::vector<TraceEntry>& trace) {
  json out = json::array();
  for (const auto& entry : trace) {
    json certs = json::array();
    for (const auto& c : entry.certificates) {
      certs.push_back({{"index", c.index},
                       {"inside", encode(c.inside)},
                       {"scoreF", encode(c.score)},
                       {"threshold", encode(c.threshold)}});
    }
    out.push_back({{"step", entry.step}, {"action", entry.action}, {"depth", entry.depth}, {"certificates", certs}});
  }
  return out;
}

json encode(const DiagramAssignment& a) {
  json out = json::object();
  for (Node n : kAllNodes) out[std::string(node_name(n))] = a[n].to_string();
  return out;
}

DiagramAssignment decode_assignment(const json& j) {
  if (!j.is_object()) bad("assignment must be an object");
  DiagramAssignment a;
  std::array<bool, kNodeCount> seen{};
  for (const auto& [key, value] : j.items()) {
    auto node = parse_node(key);
    if (!node) bad("unknown diagram node '" + key + "'");
    if (!value.is_string()) bad("label for " + key + " must be a string");
    a[*node] = CardinalLabel::parse(value.get<std::string>());
    seen[static_cast<std::size_t>(*node)] = true;
  }
  for (Node n : kAllNodes) {
    if (!seen[static_cast<std::size_t>(n)]) bad("assignment misses node " + std::string(node_name(n)));
  }
  return a;
}

json encode(const IntervalSpec& interval) {
  return json::array({encode(interval.left()), encode(interval.right())});
}

IntervalSpec decode_interval(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("interval must be [left, right]");
  return IntervalSpec(decode_rational(j[0]), decode_rational(j[1]));
}

json encode_naturals(const std::set<std::uint64_t>& values) {
  json out = json::array();
  for (auto v : values) out.push_back(v);
  return out;
}

std::set<std::uint64_t> decode_natural_set(const json& j) {
  std::set<std::uint64_t> out;
  for (const auto& v : array(j, "natural set")) out.insert(natural(v));
  return out;
}

std::vector<std::uint64_t> decode_natural_list(const json& j) {
  std::vector<std::uint64_t> out;
  for (const auto& v : array(j, "natural list")) out.push_back(natural(v));
  return out;
}

json encode_rationals(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(encode(v));
  return out;
}

std::vector<Rational> decode_rationals(const json& j) {
  std::vector<Rational> out;
  for (const auto& v : array(j, "rational list")) out.push_back(decode_rational(v));
  return out;
}

}  // namespace forcing_lab::json_io
