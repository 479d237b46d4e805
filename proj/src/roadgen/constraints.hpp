#pragma once

#include <array>
#include <string>
#include <string_view>

#include "roadgen/components.hpp"

namespace roadgen {

struct Range {
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

// Parameter bounds for instantiation plus the generator's tuning knobs.
struct Constraints {
  std::array<Range, kKindCount> length_range;  // meters, indexed by ComponentKind
  Range lane_width_range{3.0, 4.0};            // meters
  double expansion_probability = 0.5;
  int max_instantiation_retries = 16;
  double overlap_tolerance = 0.05;  // meters
  Range curve_turn_deg{15.0, 90.0};
  Range uturn_gap{2.0, 20.0};   // meters between the inner road edges
  Range uturn_apex{0.5, 8.0};   // meters

  Constraints() {
    length_range.fill(Range{20.0, 100.0});
    length_range[static_cast<std::size_t>(ComponentKind::TIntersection)] = {30.0, 100.0};
    length_range[static_cast<std::size_t>(ComponentKind::Intersection)] = {30.0, 100.0};
    length_range[static_cast<std::size_t>(ComponentKind::Roundabout)] = {50.0, 120.0};
  }

  const Range& length_for(ComponentKind kind) const { return length_range[static_cast<std::size_t>(kind)]; }

  // Throws ValidationError("constraints", ...) on empty or non-finite ranges,
  // p outside (0, 1], retries < 1, or negative tolerance.
  void validate() const;

  friend bool operator==(const Constraints&, const Constraints&) = default;
};

// Keys: length_range {"default": [min,max], "<Kind>": [min,max]},
// lane_width_range, expansion_probability, max_instantiation_retries,
// overlap_tolerance, curve_turn_deg, uturn_gap, uturn_apex. Missing keys keep
// their defaults.
Constraints parse_constraints(std::string_view text);
Constraints default_constraints();
// Canonical JSON form; used for hashing.
std::string constraints_to_json(const Constraints& c);

}  // namespace roadgen
