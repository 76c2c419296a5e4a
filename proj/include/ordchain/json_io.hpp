#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ordchain/chain.hpp"
#include "ordchain/factorize.hpp"
#include "ordchain/finite_oracle.hpp"
#include "ordchain/interval.hpp"
#include "ordchain/pcmap.hpp"
#include "ordchain/property_suite.hpp"

namespace ordchain {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Chains and elements

inline Json segment_to_json(const Segment& s) {
  switch (s.kind) {
    case SegmentKind::Fin:
      return Json{{"type", "fin"}, {"size", s.size}};
    case SegmentKind::OmegaUp:
      return Json{{"type", "omega_up"}};
    case SegmentKind::OmegaDown:
      return Json{{"type", "omega_down"}};
    case SegmentKind::IntLine:
      return Json{{"type", "int_line"}};
    case SegmentKind::RatLine:
      return Json{{"type", "rat_line"}};
  }
  return Json();
}

inline Json chain_to_json(const ChainSpec& chain) {
  Json segs = Json::array();
  for (const auto& s : chain.segments()) segs.push_back(segment_to_json(s));
  return Json{{"segments", segs}};
}

inline Json element_to_json(const Element& e) {
  return Json{{"seg", e.seg}, {"coord", rat_to_string(e.coord)}};
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace detail

inline Segment parse_segment(const Json& j) {
  std::string type = detail::string_field(j, "type");
  if (type == "fin") {
    const Json& sz = detail::field(j, "size");
    if (!sz.is_number_integer() || sz.get<std::int64_t>() < 1)
      throw InputError("finite segment size must be a positive integer");
    return Segment::fin(sz.get<std::int64_t>());
  }
  if (type == "omega_up") return Segment::omega_up();
  if (type == "omega_down") return Segment::omega_down();
  if (type == "int_line") return Segment::int_line();
  if (type == "rat_line") return Segment::rat_line();
  throw InputError("unknown segment type: '" + type + "'");
}

inline ChainSpec parse_chain(const Json& j) {
  const Json& segs = detail::field(j, "segments");
  if (!segs.is_array() || segs.empty())
    throw InputError("chain needs a nonempty 'segments' array");
  std::vector<Segment> out;
  for (const auto& s : segs) out.push_back(parse_segment(s));
  try {
    return ChainSpec(std::move(out));
  } catch (const ConstructionError& e) {
    throw InputError(e.what());
  }
}

inline Element parse_element(const Json& j) {
  const Json& seg = detail::field(j, "seg");
  if (!seg.is_number_integer() || seg.get<std::int64_t>() < 0)
    throw InputError("element 'seg' must be a non-negative integer");
  return Element(static_cast<int>(seg.get<std::int64_t>()),
                 parse_rat(detail::string_field(j, "coord")));
}

// ---------------------------------------------------------------------------
// Bounds, intervals, maps

inline Json bound_to_json(const Bound& b) {
  switch (b.kind) {
    case BoundKind::NegInf:
      return Json{{"type", "neg_inf"}};
    case BoundKind::PosInf:
      return Json{{"type", "pos_inf"}};
    case BoundKind::Gap:
      return Json{{"type", "gap"}, {"seg", b.gap_seg}};
    case BoundKind::At:
      return Json{{"type", "at"},
                  {"element", element_to_json(b.element)},
                  {"inclusive", b.inclusive}};
  }
  return Json();
}

inline Bound parse_bound(const Json& j) {
  std::string type = detail::string_field(j, "type");
  if (type == "neg_inf") return Bound::neg_inf();
  if (type == "pos_inf") return Bound::pos_inf();
  if (type == "gap") {
    const Json& seg = detail::field(j, "seg");
    if (!seg.is_number_integer()) throw InputError("gap bound needs integer 'seg'");
    return Bound::gap(static_cast<int>(seg.get<std::int64_t>()));
  }
  if (type == "at") {
    const Json& incl = detail::field(j, "inclusive");
    if (!incl.is_boolean()) throw InputError("'inclusive' must be a boolean");
    return Bound::at(parse_element(detail::field(j, "element")), incl.get<bool>());
  }
  throw InputError("unknown bound type: '" + type + "'");
}

inline Json interval_to_json(const Interval& iv) {
  return Json{{"lower", bound_to_json(iv.lower)}, {"upper", bound_to_json(iv.upper)}};
}

inline Interval parse_interval(const Json& j) {
  return Interval{parse_bound(detail::field(j, "lower")),
                  parse_bound(detail::field(j, "upper"))};
}

inline Json action_to_json(const Action& a) {
  if (a.identity) return Json{{"kind", "id"}};
  return Json{{"kind", "const"}, {"value", element_to_json(a.value)}};
}

inline Action parse_action(const Json& j) {
  std::string kind = detail::string_field(j, "kind");
  if (kind == "id") return Action::id();
  if (kind == "const") return Action::constant(parse_element(detail::field(j, "value")));
  throw InputError("unknown action kind: '" + kind + "'");
}

inline Json map_to_json(const PcMap& f) {
  Json pieces = Json::array();
  for (const auto& bp : f.bound_pieces()) {
    Json p = interval_to_json(bp.interval);
    p["action"] = action_to_json(bp.act);
    pieces.push_back(std::move(p));
  }
  return Json{{"chain", chain_to_json(f.chain())}, {"pieces", pieces}};
}

inline PcMap parse_map(const Json& j) {
  ChainSpec chain = parse_chain(detail::field(j, "chain"));
  const Json& pieces = detail::field(j, "pieces");
  if (!pieces.is_array() || pieces.empty())
    throw InputError("map needs a nonempty 'pieces' array");
  std::vector<BoundPiece> bps;
  for (const auto& p : pieces)
    bps.push_back({parse_interval(p), parse_action(detail::field(p, "action"))});
  try {
    return PcMap::from_bound_pieces(std::move(chain), bps);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Classification results

inline Json region_class_to_json(RegionClass c) {
  switch (c) {
    case RegionClass::Minus:
      return "minus";
    case RegionClass::Zero:
      return "zero";
    case RegionClass::Plus:
      return "plus";
  }
  return Json();
}

inline Json cardinality_to_json(const CardinalityClass& c) {
  if (c.infinite) return Json{{"kind", "countably_infinite"}};
  return Json{{"kind", "finite"}, {"count", c.count.str()}};
}

inline Json regions_to_json(const Regions& r) {
  return Json{{"minus", interval_to_json(r.minus)},
              {"zero", interval_to_json(r.zero)},
              {"plus", interval_to_json(r.plus)}};
}

inline Json j_certificate_to_json(const JCertificate& c) {
  if (c.in_j) return Json{{"verdict", "in_j"}, {"witness", interval_to_json(c.witness)}};
  return Json{{"verdict", "not_in_j"},
              {"image_cardinality", cardinality_to_json(c.image_cardinality)}};
}

// ---------------------------------------------------------------------------
// Factorization results

inline Json obstruction_to_json(const ObstructionWitness& w) {
  switch (w.kind) {
    case ObstructionWitness::Kind::EmptyX0Crossing:
      return Json{{"kind", "empty_x0_crossing"},
                  {"xplus", element_to_json(w.xplus)},
                  {"ximage", element_to_json(w.ximage)},
                  {"plus_maps_down", w.plus_maps_down}};
    case ObstructionWitness::Kind::BoundedImageEnd:
      return Json{{"kind", "bounded_image_end"},
                  {"end", w.end_is_max ? "max" : "min"},
                  {"value", element_to_json(w.end_value)}};
    case ObstructionWitness::Kind::NotRepresentableInJf:
      return Json{{"kind", "not_representable_in_jf"}};
  }
  return Json();
}

inline Json trace_to_json(const FactorizationTrace& t) {
  Json factors = Json::array();
  for (const auto& f : t.factors) factors.push_back(map_to_json(f));
  return Json{{"zero", element_to_json(t.zero)},
              {"case", t.fcase == FactorCase::BelowOrEqual ? "below" : "above_dual"},
              {"i", t.i},
              {"k", t.k},
              {"factors", factors}};
}

inline Json factorization_to_json(const FactorizationResult& r) {
  switch (r.outcome) {
    case FactorizationResult::Outcome::Singleton:
      return Json{{"outcome", "singleton"}};
    case FactorizationResult::Outcome::Factored:
      return Json{{"outcome", "factored"}, {"trace", trace_to_json(*r.trace)}};
    case FactorizationResult::Outcome::TwoFactor:
      return Json{{"outcome", "two_factor"},
                  {"a1", map_to_json(r.two_factor->first)},
                  {"a2", map_to_json(r.two_factor->second)}};
    case FactorizationResult::Outcome::Obstructed:
      return Json{{"outcome", "obstructed"}, {"witness", obstruction_to_json(*r.witness)}};
  }
  return Json();
}

inline std::vector<PcMap> parse_factors(const Json& j) {
  // Either a bare array of maps or a factorization result.
  std::vector<PcMap> out;
  if (j.is_array()) {
    for (const auto& m : j) out.push_back(parse_map(m));
    return out;
  }
  std::string outcome = detail::string_field(j, "outcome");
  if (outcome == "factored") {
    for (const auto& m : detail::field(detail::field(j, "trace"), "factors"))
      out.push_back(parse_map(m));
    return out;
  }
  if (outcome == "two_factor") {
    out.push_back(parse_map(detail::field(j, "a1")));
    out.push_back(parse_map(detail::field(j, "a2")));
    return out;
  }
  if (outcome == "singleton") return out;  // the map is its own factorization
  throw InputError("no factors to extract from outcome '" + outcome + "'");
}

inline Json verification_to_json(const VerificationReport& r) {
  Json certs = Json::array();
  for (const auto& c : r.factor_certificates) certs.push_back(j_certificate_to_json(c));
  return Json{{"pass", r.pass},
              {"symbolic", Json{{"pass", r.symbolic.pass}, {"detail", r.symbolic.detail}}},
              {"factors_in_j", Json{{"pass", r.all_in_j}, {"certificates", certs}}},
              {"pointwise",
               Json{{"pass", r.pointwise.pass}, {"detail", r.pointwise.detail}}}};
}

inline Json generation_to_json(const GenerationDecision& d) {
  if (d.generated)
    return Json{{"generated", true}, {"witness", element_to_json(*d.witness)}};
  return Json{{"generated", false}, {"reason", "x0_empty"}};
}

// ---------------------------------------------------------------------------
// Oracle, bijection and suite reports

inline Json oracle_report_to_json(const OracleReport& r) {
  return Json{{"n", r.n},
              {"order", static_cast<std::uint64_t>(r.order)},
              {"top_class_size", static_cast<std::uint64_t>(r.top_class_size)},
              {"closure_size", static_cast<std::uint64_t>(r.closure_size)},
              {"generated", r.generated}};
}

inline Json jf_subset_to_json(const JfSubset& s) {
  Json image = Json::array();
  for (const auto& e : s.image) image.push_back(element_to_json(e));
  Json breakpoints = Json::array();
  for (const auto& e : s.breakpoints) breakpoints.push_back(element_to_json(e));
  return Json{{"image", image}, {"breakpoints", breakpoints}};
}

inline std::vector<Element> parse_element_list(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of elements");
  std::vector<Element> out;
  for (const auto& e : j) out.push_back(parse_element(e));
  return out;
}

inline Json suite_report_to_json(const SuiteReport& r) {
  Json props = Json::array();
  for (const auto& p : r.properties) {
    Json failures = Json::array();
    for (const auto& f : p.failures)
      failures.push_back(Json{{"seed", f.seed}, {"case", f.case_index},
                              {"witness", f.witness}});
    props.push_back(Json{{"name", p.name}, {"cases", p.cases}, {"failures", failures}});
  }
  return Json{{"pass", r.pass}, {"properties", props}};
}

}  // namespace ordchain
