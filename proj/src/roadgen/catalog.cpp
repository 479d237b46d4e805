#include "roadgen/catalog.hpp"

#include <cstdio>
#include <set>
#include <tuple>

#include "roadgen/default_tables.hpp"
#include "roadgen/json_util.hpp"

namespace roadgen {

namespace ju = json_util;

CatalogTable parse_catalog_table(std::string_view text) {
  const ju::Json doc = ju::parse(text, "catalog table");
  if (!doc.is_object()) ju::schema_error("catalog table", "expected an object");
  CatalogTable table;

  if (const auto it = doc.find("shape"); it != doc.end()) {
    for (const auto& [key, value] : it->items()) {
      if (key == "fork_divergence_deg") {
        table.shape.fork_divergence = deg_to_rad(canonical_real(ju::number(value, "shape." + key)));
      } else if (key == "roundabout_island_radius") {
        table.shape.roundabout_island_radius = canonical_real(ju::number(value, "shape." + key));
      } else {
        ju::schema_error("catalog table", "unknown shape key '" + key + "'");
      }
    }
  }
  if (!(table.shape.fork_divergence > 0.0 && table.shape.fork_divergence < kPi / 2)) {
    throw ValidationError("catalog", "fork_divergence_deg must be within (0, 90)");
  }
  if (!(table.shape.roundabout_island_radius > 0.0)) {
    throw ValidationError("catalog", "roundabout_island_radius must be positive");
  }

  const ju::Json& rows = ju::array(ju::member(doc, "rows", "catalog table"), "rows");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "rows[" + std::to_string(r) + "]";
    const ju::Json& row = rows[r];
    CatalogRow out;
    const std::string kind = ju::string(ju::member(row, "kind", where), where + ".kind");
    const auto parsed_kind = parse_kind(kind);
    if (!parsed_kind) ju::schema_error(where, "unknown kind '" + kind + "'");
    out.kind = *parsed_kind;

    if (const auto it = row.find("variants"); it != row.end()) {
      out.variants.clear();
      for (const auto& v : ju::array(*it, where + ".variants")) {
        const std::string name = ju::string(v, where + ".variants");
        const auto variant = parse_variant(name);
        if (!variant) ju::schema_error(where, "unknown variant '" + name + "'");
        out.variants.push_back(*variant);
      }
    }
    for (const auto& v : ju::array(ju::member(row, "lane_counts", where), where + ".lane_counts")) {
      out.lane_counts.push_back(static_cast<int>(ju::integer(v, where + ".lane_counts")));
    }
    for (const auto& v : ju::array(ju::member(row, "markings", where), where + ".markings")) {
      const std::string name = ju::string(v, where + ".markings");
      const auto marking = parse_marking(name);
      if (!marking) ju::schema_error(where, "unknown marking '" + name + "'");
      out.markings.push_back(*marking);
    }
    for (const auto& v : ju::array(ju::member(row, "bidirectional", where), where + ".bidirectional")) {
      out.bidirectional.push_back(ju::boolean(v, where + ".bidirectional"));
    }
    for (const auto& [key, value] : row.items()) {
      (void)value;
      if (key != "kind" && key != "variants" && key != "lane_counts" && key != "markings" &&
          key != "bidirectional") {
        ju::schema_error(where, "unknown key '" + key + "'");
      }
    }
    table.rows.push_back(std::move(out));
  }
  return table;
}

std::vector<ComponentTemplate> build_catalog(const CatalogTable& table) {
  std::vector<ComponentTemplate> catalog;
  std::set<std::tuple<ComponentKind, Variant, InterfaceSignature>> seen;
  for (const CatalogRow& row : table.rows) {
    for (int lanes : row.lane_counts) {
      if (lanes < kMinLanes || lanes > kMaxLanes) {
        throw ValidationError("catalog", std::string(kind_name(row.kind)) + ": lane count " +
                                             std::to_string(lanes) + " outside 1..6");
      }
    }
    for (Variant variant : row.variants) {
      for (bool bidi : row.bidirectional) {
        for (int lanes : row.lane_counts) {
          for (LaneMarking marking : row.markings) {
            const InterfaceSignature sig{lanes, marking, bidi};
            if (!seen.insert({row.kind, variant, sig}).second) continue;
            catalog.push_back(
                make_template(static_cast<int>(catalog.size()), row.kind, variant, sig, table.shape));
          }
        }
      }
    }
  }
  return catalog;
}

CatalogTable default_catalog_table() { return parse_catalog_table(default_catalog_text()); }

std::vector<ComponentTemplate> default_catalog() { return build_catalog(default_catalog_table()); }

std::string catalog_listing(std::span<const ComponentTemplate> catalog) {
  std::string out;
  if (!catalog.empty()) {
    const ShapeOptions& shape = catalog.front().shape;
    out += "# fork_divergence_deg=" + format_real(rad_to_deg(shape.fork_divergence)) +
           " roundabout_island_radius=" + format_real(shape.roundabout_island_radius) + "\n";
  }
  char buf[160];
  for (const ComponentTemplate& t : catalog) {
    std::snprintf(buf, sizeof(buf), "%4d  %-13s %-7s %-32s ->", t.template_id,
                  std::string(kind_name(t.kind)).c_str(), std::string(variant_name(t.variant)).c_str(),
                  to_string(t.signature).c_str());
    out += buf;
    for (const InterfaceSignature& s : t.endpoint_signatures) out += " " + to_string(s);
    out += "\n";
  }
  return out;
}

std::string catalog_hash(std::span<const ComponentTemplate> catalog) {
  return hex64(fnv1a64(catalog_listing(catalog)));
}

}  // namespace roadgen
