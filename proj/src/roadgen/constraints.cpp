#include "roadgen/constraints.hpp"

#include <cmath>

#include "roadgen/default_tables.hpp"
#include "roadgen/json_util.hpp"

namespace roadgen {

namespace ju = json_util;

namespace {

void check_range(const Range& r, const std::string& name, bool positive) {
  if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max) {
    throw ValidationError("constraints", name + " must be a finite [min, max] with min <= max");
  }
  if (positive && !(r.min > 0.0)) throw ValidationError("constraints", name + " must be positive");
}

Range read_range(const ju::Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) ju::schema_error(where, "expected [min, max]");
  return Range{canonical_real(ju::number(v[0], where)), canonical_real(ju::number(v[1], where))};
}

ju::Json range_json(const Range& r) { return ju::Json::array({r.min, r.max}); }

}  // namespace

void Constraints::validate() const {
  for (ComponentKind k : kAllKinds) {
    check_range(length_for(k), "length_range." + std::string(kind_name(k)), true);
  }
  check_range(lane_width_range, "lane_width_range", true);
  check_range(curve_turn_deg, "curve_turn_deg", true);
  if (curve_turn_deg.max > 180.0) throw ValidationError("constraints", "curve_turn_deg must not exceed 180");
  check_range(uturn_gap, "uturn_gap", true);
  check_range(uturn_apex, "uturn_apex", true);
  if (!(expansion_probability > 0.0 && expansion_probability <= 1.0)) {
    throw ValidationError("constraints", "expansion_probability must be within (0, 1]");
  }
  if (max_instantiation_retries < 1) {
    throw ValidationError("constraints", "max_instantiation_retries must be at least 1");
  }
  if (!(overlap_tolerance >= 0.0) || !std::isfinite(overlap_tolerance)) {
    throw ValidationError("constraints", "overlap_tolerance must be >= 0");
  }
}

Constraints parse_constraints(std::string_view text) {
  const ju::Json doc = ju::parse(text, "constraints");
  if (!doc.is_object()) ju::schema_error("constraints", "expected an object");
  Constraints c;
  for (const auto& [key, value] : doc.items()) {
    if (key == "length_range") {
      if (!value.is_object()) ju::schema_error(key, "expected an object keyed by kind");
      if (const auto it = value.find("default"); it != value.end()) {
        c.length_range.fill(read_range(*it, "length_range.default"));
      }
      for (const auto& [kind, range] : value.items()) {
        if (kind == "default") continue;
        const auto parsed = parse_kind(kind);
        if (!parsed) ju::schema_error("length_range", "unknown kind '" + kind + "'");
        c.length_range[static_cast<std::size_t>(*parsed)] = read_range(range, "length_range." + kind);
      }
    } else if (key == "lane_width_range") {
      c.lane_width_range = read_range(value, key);
    } else if (key == "expansion_probability") {
      c.expansion_probability = canonical_real(ju::number(value, key));
    } else if (key == "max_instantiation_retries") {
      c.max_instantiation_retries = static_cast<int>(ju::integer(value, key));
    } else if (key == "overlap_tolerance") {
      c.overlap_tolerance = canonical_real(ju::number(value, key));
    } else if (key == "curve_turn_deg") {
      c.curve_turn_deg = read_range(value, key);
    } else if (key == "uturn_gap") {
      c.uturn_gap = read_range(value, key);
    } else if (key == "uturn_apex") {
      c.uturn_apex = read_range(value, key);
    } else {
      ju::schema_error("constraints", "unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

Constraints default_constraints() { return parse_constraints(default_constraints_text()); }

std::string constraints_to_json(const Constraints& c) {
  ju::Json doc;
  ju::Json lengths = ju::Json::object();
  for (ComponentKind k : kAllKinds) lengths[std::string(kind_name(k))] = range_json(c.length_for(k));
  doc["length_range"] = std::move(lengths);
  doc["lane_width_range"] = range_json(c.lane_width_range);
  doc["expansion_probability"] = c.expansion_probability;
  doc["max_instantiation_retries"] = c.max_instantiation_retries;
  doc["overlap_tolerance"] = c.overlap_tolerance;
  doc["curve_turn_deg"] = range_json(c.curve_turn_deg);
  doc["uturn_gap"] = range_json(c.uturn_gap);
  doc["uturn_apex"] = range_json(c.uturn_apex);
  return doc.dump(2);
}

}  // namespace roadgen
