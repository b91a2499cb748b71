#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "json.hpp"

#include "forcing_lab/clopen.hpp"
#include "forcing_lab/diagram.hpp"
#include "forcing_lab/name_calculus.hpp"
#include "forcing_lab/poset.hpp"
#include "forcing_lab/rational.hpp"
#include "forcing_lab/smz_rapid.hpp"

// Wire formats. Decoders throw Error(ParseError) on malformed documents.
namespace forcing_lab::json_io {

using nlohmann::json;

json encode(const Rational& r);
Rational decode_rational(const json& j);

json encode(const BinaryString& s);
BinaryString decode_string(const json& j);

json encode(const ClopenSet& set);
ClopenSet decode_clopen(const json& j);

// {resolution: [r1, r2], rects: [[s, t], ...]}
json encode(const ClopenPlaneSet& set);
ClopenPlaneSet decode_plane(const json& j);

// {horizon: K, coords: [[{label, cells: [...]}, ...], ...]}
json encode(const FiniteName& name);
FiniteName decode_name(const json& j);

// {slots: [[...], ...]}
json encode(const Slalom& slalom);
Slalom decode_slalom(const json& j);

// {resolution: [M1, M2], table: ["p/q", ...]}
json encode(const WeightFunction& phi);
WeightFunction decode_weight(const json& j);

// {m, h: [[s, t], ...], u: [{eps, phi}, ...]}
json encode(const Condition& p);
Condition decode_condition(const json& j);

json encode(const std::vector<TraceEntry>& trace);

// {node: label}
json encode(const DiagramAssignment& a);
DiagramAssignment decode_assignment(const json& j);

json encode(const IntervalSpec& interval);
IntervalSpec decode_interval(const json& j);

json encode_naturals(const std::set<std::uint64_t>& values);
std::set<std::uint64_t> decode_natural_set(const json& j);
std::vector<std::uint64_t> decode_natural_list(const json& j);
json encode_rationals(const std::vector<Rational>& values);
std::vector<Rational> decode_rationals(const json& j);

}  // namespace forcing_lab::json_io
