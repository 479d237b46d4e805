#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roadgen/components.hpp"

namespace roadgen {

// One row of the catalog validity table: every combination of the listed
// values is a template.
struct CatalogRow {
  ComponentKind kind = ComponentKind::Straight;
  std::vector<Variant> variants{Variant::None};
  std::vector<int> lane_counts;
  std::vector<LaneMarking> markings;
  std::vector<bool> bidirectional;
};

struct CatalogTable {
  ShapeOptions shape;
  std::vector<CatalogRow> rows;
};

// Reads the JSON validity table. Throws ParseError for malformed text and
// ValidationError for unknown names or missing keys.
CatalogTable parse_catalog_table(std::string_view text);

// Expands the table in row order. Template ids are 0..n-1 in expansion order;
// repeated (kind, variant, signature) combinations keep the first occurrence.
// Throws ValidationError for lane counts outside 1..6 or unrealizable rows.
std::vector<ComponentTemplate> build_catalog(const CatalogTable& table);

CatalogTable default_catalog_table();
std::vector<ComponentTemplate> default_catalog();

// One line per template.
std::string catalog_listing(std::span<const ComponentTemplate> catalog);
// Stable 16-hex-digit hash of the listing.
std::string catalog_hash(std::span<const ComponentTemplate> catalog);

}  // namespace roadgen
