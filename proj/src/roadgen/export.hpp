#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roadgen/generation.hpp"

namespace roadgen {

inline constexpr std::string_view kSchemaVersion = "roadgen.scenario/1";

struct DocumentMetadata {
  std::string mode;          // "guided" / "random" / "" when unknown
  std::string catalog_hash;  // "" when unknown
  std::int64_t batch_index = -1;

  friend bool operator==(const DocumentMetadata&, const DocumentMetadata&) = default;
};

// Canonical scenario document. Keys are in a fixed order and every real has
// at most 9 significant digits.
std::string to_json(const RoadScenario& scenario, const DocumentMetadata& metadata = {});

// Re-instantiates every component from its template and parameters, then
// validates the scenario. Throws ParseError for malformed text and
// ValidationError naming the failed invariant otherwise.
RoadScenario from_json(std::string_view text, DocumentMetadata* metadata = nullptr);

// OpenDRIVE 1.6 subset: one road per component piece, one junction per
// Fork/TIntersection/Intersection/Roundabout.
std::string to_opendrive(const RoadScenario& scenario);

// Problems found by the subset validator; empty when the document conforms.
std::vector<std::string> validate_opendrive(std::string_view xml);

// Throws PreconditionError unless scale > 0.
std::string to_svg(const RoadScenario& scenario, double scale = 4.0);

// Strict well-formedness check; returns the parser message on failure.
std::optional<std::string> check_xml(std::string_view xml);

// OpenDRIVE roadMark (type, color) for a marking.
struct RoadMarkStyle {
  std::string_view type;
  std::string_view color;
};
RoadMarkStyle road_mark_for(LaneMarking marking);

}  // namespace roadgen
