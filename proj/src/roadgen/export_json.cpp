#include "roadgen/export.hpp"

#include "roadgen/catalog.hpp"
#include "roadgen/json_util.hpp"

namespace roadgen {

namespace ju = json_util;

namespace {

ju::Json signature_json(const InterfaceSignature& s) {
  ju::Json j;
  j["lane_count"] = s.lane_count;
  j["marking"] = std::string(marking_name(s.marking));
  j["bidirectional"] = s.bidirectional;
  return j;
}

ju::Json point_json(Point2 p) { return ju::Json::array({canonical_real(p.x), canonical_real(p.y)}); }

double heading_deg(double heading) { return canonical_real(rad_to_deg(heading)); }

ju::Json instance_json(const ComponentInstance& inst) {
  const ComponentTemplate& t = inst.tmpl;
  ju::Json tmpl;
  tmpl["template_id"] = t.template_id;
  tmpl["kind"] = std::string(kind_name(t.kind));
  tmpl["variant"] = std::string(variant_name(t.variant));
  tmpl["signature"] = signature_json(t.signature);
  ju::Json ends = ju::Json::array();
  for (const InterfaceSignature& s : t.endpoint_signatures) ends.push_back(signature_json(s));
  tmpl["endpoint_signatures"] = std::move(ends);
  ju::Json shape;
  shape["fork_divergence_deg"] = canonical_real(rad_to_deg(t.shape.fork_divergence));
  shape["roundabout_island_radius"] = canonical_real(t.shape.roundabout_island_radius);
  tmpl["shape"] = std::move(shape);

  const ComponentParams& p = inst.params;
  ju::Json params;
  params["length"] = canonical_real(p.length);
  params["lane_width"] = canonical_real(p.lane_width);
  ju::Json start;
  start["x"] = canonical_real(p.start.position.x);
  start["y"] = canonical_real(p.start.position.y);
  start["heading_deg"] = heading_deg(p.start.heading);
  params["start"] = std::move(start);
  if (const auto* c = std::get_if<CurveParams>(&p.kind_specific)) {
    ju::Json curve;
    curve["p0"] = point_json(c->p0);
    curve["p1"] = point_json(c->p1);
    curve["p2"] = point_json(c->p2);
    curve["p3"] = point_json(c->p3);
    params["curve"] = std::move(curve);
  } else if (const auto* u = std::get_if<UTurnParams>(&p.kind_specific)) {
    ju::Json uturn;
    uturn["spacing"] = canonical_real(u->spacing);
    uturn["apex"] = canonical_real(u->apex);
    params["uturn"] = std::move(uturn);
  }

  ju::Json out;
  out["id"] = inst.id;
  out["template"] = std::move(tmpl);
  out["params"] = std::move(params);
  return out;
}

InterfaceSignature read_signature(const ju::Json& j, const std::string& where) {
  InterfaceSignature s;
  s.lane_count = static_cast<int>(ju::integer(ju::member(j, "lane_count", where), where + ".lane_count"));
  const std::string m = ju::string(ju::member(j, "marking", where), where + ".marking");
  const auto marking = parse_marking(m);
  if (!marking) ju::schema_error(where, "unknown marking '" + m + "'");
  s.marking = *marking;
  s.bidirectional = ju::boolean(ju::member(j, "bidirectional", where), where + ".bidirectional");
  return s;
}

Point2 read_point(const ju::Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) ju::schema_error(where, "expected [x, y]");
  return Point2{ju::number(j[0], where), ju::number(j[1], where)};
}

ComponentTemplate read_template(const ju::Json& j, const std::string& where) {
  const int id = static_cast<int>(ju::integer(ju::member(j, "template_id", where), where + ".template_id"));
  const std::string kind_text = ju::string(ju::member(j, "kind", where), where + ".kind");
  const auto kind = parse_kind(kind_text);
  if (!kind) ju::schema_error(where, "unknown kind '" + kind_text + "'");
  const std::string variant_text = ju::string(ju::member(j, "variant", where), where + ".variant");
  const auto variant = parse_variant(variant_text);
  if (!variant) ju::schema_error(where, "unknown variant '" + variant_text + "'");
  const InterfaceSignature sig = read_signature(ju::member(j, "signature", where), where + ".signature");
  const ju::Json& shape_json = ju::member(j, "shape", where);
  ShapeOptions shape;
  shape.fork_divergence =
      deg_to_rad(ju::number(ju::member(shape_json, "fork_divergence_deg", where), where + ".shape"));
  shape.roundabout_island_radius =
      ju::number(ju::member(shape_json, "roundabout_island_radius", where), where + ".shape");

  ComponentTemplate t = make_template(id, *kind, *variant, sig, shape);
  std::vector<InterfaceSignature> declared;
  for (const ju::Json& e : ju::array(ju::member(j, "endpoint_signatures", where), where + ".endpoint_signatures")) {
    declared.push_back(read_signature(e, where + ".endpoint_signatures"));
  }
  if (declared != t.endpoint_signatures) {
    throw ValidationError("signature-match", where + ": endpoint signatures differ from the template's");
  }
  return t;
}

ComponentParams read_params(const ju::Json& j, const std::string& where) {
  ComponentParams p;
  p.length = ju::number(ju::member(j, "length", where), where + ".length");
  p.lane_width = ju::number(ju::member(j, "lane_width", where), where + ".lane_width");
  const ju::Json& start = ju::member(j, "start", where);
  const Point2 pos{ju::number(ju::member(start, "x", where), where + ".start.x"),
                   ju::number(ju::member(start, "y", where), where + ".start.y")};
  const double deg = ju::number(ju::member(start, "heading_deg", where), where + ".start.heading_deg");
  p.start = Pose::make(pos, deg_to_rad(deg));
  if (const auto it = j.find("curve"); it != j.end()) {
    p.kind_specific = CurveParams{read_point(ju::member(*it, "p0", where), where + ".curve.p0"),
                                  read_point(ju::member(*it, "p1", where), where + ".curve.p1"),
                                  read_point(ju::member(*it, "p2", where), where + ".curve.p2"),
                                  read_point(ju::member(*it, "p3", where), where + ".curve.p3")};
  } else if (const auto it2 = j.find("uturn"); it2 != j.end()) {
    p.kind_specific = UTurnParams{ju::number(ju::member(*it2, "spacing", where), where + ".uturn.spacing"),
                                  ju::number(ju::member(*it2, "apex", where), where + ".uturn.apex")};
  }
  return p;
}

}  // namespace

std::string to_json(const RoadScenario& scenario, const DocumentMetadata& metadata) {
  ju::Json doc;
  doc["schema_version"] = std::string(kSchemaVersion);
  ju::Json meta;
  meta["seed"] = scenario.seed;
  meta["catalog_hash"] = metadata.catalog_hash;
  meta["mode"] = metadata.mode;
  meta["batch_index"] = metadata.batch_index;
  doc["metadata"] = std::move(meta);

  ju::Json body;
  body["seed"] = scenario.seed;
  body["short"] = scenario.is_short;
  body["overlap_tolerance"] = canonical_real(scenario.overlap_tolerance);
  ju::Json instances = ju::Json::array();
  for (const ComponentInstance& inst : scenario.instances) instances.push_back(instance_json(inst));
  body["instances"] = std::move(instances);
  ju::Json connections = ju::Json::array();
  for (const Connection& c : scenario.connections) {
    ju::Json cj;
    cj["from_instance"] = c.from.instance;
    cj["from_endpoint"] = c.from.endpoint;
    cj["to_instance"] = c.to_instance;
    connections.push_back(std::move(cj));
  }
  body["connections"] = std::move(connections);
  doc["scenario"] = std::move(body);
  return doc.dump(2) + "\n";
}

RoadScenario from_json(std::string_view text, DocumentMetadata* metadata) {
  const ju::Json doc = ju::parse(text, "scenario document");
  const std::string version = ju::string(ju::member(doc, "schema_version", "document"), "schema_version");
  if (version != kSchemaVersion) ju::schema_error("document", "unsupported schema_version '" + version + "'");

  if (metadata != nullptr) {
    const ju::Json& meta = ju::member(doc, "metadata", "document");
    metadata->catalog_hash = ju::string(ju::member(meta, "catalog_hash", "metadata"), "metadata.catalog_hash");
    metadata->mode = ju::string(ju::member(meta, "mode", "metadata"), "metadata.mode");
    metadata->batch_index = ju::integer(ju::member(meta, "batch_index", "metadata"), "metadata.batch_index");
  }

  const ju::Json& body = ju::member(doc, "scenario", "document");
  RoadScenario s;
  const ju::Json& seed = ju::member(body, "seed", "scenario");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    ju::schema_error("scenario.seed", "expected a non-negative integer");
  }
  s.seed = seed.get<std::uint64_t>();
  s.is_short = ju::boolean(ju::member(body, "short", "scenario"), "scenario.short");
  s.overlap_tolerance = ju::number(ju::member(body, "overlap_tolerance", "scenario"), "scenario.overlap_tolerance");
  if (!(s.overlap_tolerance >= 0.0)) ju::schema_error("scenario.overlap_tolerance", "must be >= 0");

  const ju::Json& instances = ju::array(ju::member(body, "instances", "scenario"), "scenario.instances");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const std::string where = "instances[" + std::to_string(i) + "]";
    const ju::Json& ij = instances[i];
    const long long id = ju::integer(ju::member(ij, "id", where), where + ".id");
    if (id != static_cast<long long>(i)) throw ValidationError("structure", where + ": id must equal its position");
    const ComponentTemplate t = read_template(ju::member(ij, "template", where), where + ".template");
    const ComponentParams p = read_params(ju::member(ij, "params", where), where + ".params");
    ComponentInstance inst = [&] {
      try {
        return instantiate(t, p);
      } catch (const InstantiationError& e) {
        throw ValidationError("instantiation", where + ": " + e.what());
      }
    }();
    assign_id(inst, static_cast<int>(i));
    s.covered_area.push_back(inst.footprint);
    s.instances.push_back(std::move(inst));
  }

  const ju::Json& connections = ju::array(ju::member(body, "connections", "scenario"), "scenario.connections");
  for (std::size_t i = 0; i < connections.size(); ++i) {
    const std::string where = "connections[" + std::to_string(i) + "]";
    const ju::Json& cj = connections[i];
    Connection c;
    c.from.instance = static_cast<int>(ju::integer(ju::member(cj, "from_instance", where), where));
    c.from.endpoint = static_cast<int>(ju::integer(ju::member(cj, "from_endpoint", where), where));
    c.to_instance = static_cast<int>(ju::integer(ju::member(cj, "to_instance", where), where));
    s.connections.push_back(c);
  }
  validate_scenario(s);
  return s;
}

}  // namespace roadgen
