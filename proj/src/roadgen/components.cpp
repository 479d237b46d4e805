#include "roadgen/components.hpp"

#include <algorithm>
#include <cmath>

#include "roadgen/errors.hpp"

namespace roadgen {

namespace {

constexpr std::array<std::string_view, kKindCount> kKindNames = {
    "Straight", "Curve", "LaneSwitch", "Fork", "TIntersection", "Intersection", "UTurn", "Roundabout"};
constexpr std::array<std::string_view, kMarkingCount> kMarkingNames = {
    "WhiteDashed", "WhiteSolid", "WhiteDoubleSolid", "YellowDashed",
    "YellowSolid", "YellowDoubleSolid", "YellowDashedSolid"};
constexpr std::array<std::string_view, 5> kVariantNames = {"none", "split", "merge", "widen", "narrow"};

// Minimum straight arm length for junction kinds.
constexpr double kMinArm = 1.0;
// Offset curves must stay clear of the center of curvature.
constexpr double kCurvatureMargin = 0.95;

template <typename E, std::size_t N>
std::optional<E> parse_enum(std::string_view name, const std::array<std::string_view, N>& names) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<E>(i);
  }
  return std::nullopt;
}

}  // namespace

std::string_view kind_name(ComponentKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }
std::string_view marking_name(LaneMarking m) { return kMarkingNames[static_cast<std::size_t>(m)]; }
std::string_view variant_name(Variant v) { return kVariantNames[static_cast<std::size_t>(v)]; }
std::optional<ComponentKind> parse_kind(std::string_view n) { return parse_enum<ComponentKind>(n, kKindNames); }
std::optional<LaneMarking> parse_marking(std::string_view n) { return parse_enum<LaneMarking>(n, kMarkingNames); }
std::optional<Variant> parse_variant(std::string_view n) { return parse_enum<Variant>(n, kVariantNames); }

std::string to_string(const InterfaceSignature& sig) {
  return std::to_string(sig.lane_count) + "/" + std::string(marking_name(sig.marking)) + "/" +
         (sig.bidirectional ? "bidirectional" : "oneway");
}

int endpoint_count(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Straight:
    case ComponentKind::Curve:
    case ComponentKind::LaneSwitch:
    case ComponentKind::UTurn:
      return 1;
    case ComponentKind::Fork:
    case ComponentKind::TIntersection:
      return 2;
    case ComponentKind::Intersection:
    case ComponentKind::Roundabout:
      return 3;
  }
  return 1;
}

SideCounts side_counts(const InterfaceSignature& sig) {
  if (!sig.bidirectional) return {sig.lane_count, 0};
  return {(sig.lane_count + 1) / 2, sig.lane_count / 2};
}

ComponentTemplate make_template(int template_id, ComponentKind kind, Variant variant,
                                InterfaceSignature signature, ShapeOptions shape) {
  const auto fail = [&](const std::string& why) {
    throw ValidationError("catalog", std::string(kind_name(kind)) + " " + to_string(signature) + ": " + why);
  };
  if (signature.lane_count < kMinLanes || signature.lane_count > kMaxLanes) {
    fail("lane_count must be within 1..6");
  }
  if (signature.bidirectional && signature.lane_count < 2) fail("bidirectional roads need at least 2 lanes");

  ComponentTemplate t;
  t.template_id = template_id;
  t.kind = kind;
  t.variant = variant;
  t.signature = signature;
  t.shape = shape;

  if (kind == ComponentKind::Fork) {
    if (variant != Variant::Split && variant != Variant::Merge) fail("Fork needs variant split or merge");
    t.endpoint_signatures.assign(2, signature);
  } else if (kind == ComponentKind::LaneSwitch) {
    if (variant != Variant::Widen && variant != Variant::Narrow) fail("LaneSwitch needs variant widen or narrow");
    const int step = signature.bidirectional ? 2 : 1;
    InterfaceSignature end = signature;
    end.lane_count += variant == Variant::Widen ? step : -step;
    const int floor = signature.bidirectional ? 2 : kMinLanes;
    if (end.lane_count < floor || end.lane_count > kMaxLanes) fail("lane switch target outside 1..6");
    t.endpoint_signatures.push_back(end);
  } else {
    if (variant != Variant::None) fail("variant only applies to Fork and LaneSwitch");
    t.endpoint_signatures.assign(static_cast<std::size_t>(endpoint_count(kind)), signature);
  }
  return t;
}

std::vector<ComponentTemplate> candidates_for(const InterfaceSignature& sig,
                                              std::span<const ComponentTemplate> catalog) {
  std::vector<ComponentTemplate> out;
  for (const ComponentTemplate& t : catalog) {
    if (t.signature == sig) out.push_back(t);
  }
  return out;
}

void assign_id(ComponentInstance& instance, int id) {
  instance.id = id;
  for (Endpoint& e : instance.endpoints) e.owner = id;
}

namespace {

// Lane layout for one road piece that may change lane counts along its length.
RoadPiece make_piece(std::string name, ReferencePath path, const InterfaceSignature& from,
                     const InterfaceSignature& to, double width) {
  RoadPiece piece;
  piece.name = std::move(name);
  piece.path = std::move(path);

  const SideCounts c0 = side_counts(from);
  const SideCounts c1 = side_counts(to);
  const int right_max = std::max(c0.right, c1.right);
  const int left_max = std::max(c0.left, c1.left);
  const LaneMarking marking = from.marking;

  if (from.bidirectional) {
    piece.center_marking = marking;
  } else {
    piece.center_marking = right_max == 1 ? marking : LaneMarking::WhiteSolid;
  }

  const auto separator = [&](int k, int count) {
    const bool outermost = k == count - 1;
    if (from.bidirectional) return outermost ? LaneMarking::WhiteSolid : LaneMarking::WhiteDashed;
    if (count == 1) return marking;
    return outermost ? LaneMarking::WhiteSolid : marking;
  };

  for (int k = 0; k < right_max; ++k) {
    piece.right.push_back(LaneSpec{-(k + 1), k < c0.right ? width : 0.0, k < c1.right ? width : 0.0,
                                   separator(k, right_max)});
  }
  for (int k = 0; k < left_max; ++k) {
    piece.left.push_back(LaneSpec{k + 1, k < c0.left ? width : 0.0, k < c1.left ? width : 0.0,
                                  separator(k, left_max)});
  }
  // Keep the path on the geometric center of the road.
  piece.offset_start = 0.5 * width * (c0.right - c0.left);
  piece.offset_end = 0.5 * width * (c1.right - c1.left);
  return piece;
}

struct CrossSection {
  double offset = 0.0;
  std::vector<double> right;  // widths, inner to outer
  std::vector<double> left;
};

CrossSection cross_section(const RoadPiece& piece, double f) {
  CrossSection cs;
  cs.offset = piece.offset_start + f * (piece.offset_end - piece.offset_start);
  for (const LaneSpec& l : piece.right) cs.right.push_back(l.width_start + f * (l.width_end - l.width_start));
  for (const LaneSpec& l : piece.left) cs.left.push_back(l.width_start + f * (l.width_end - l.width_start));
  return cs;
}

double side_total(const std::vector<double>& widths) {
  double t = 0.0;
  for (double w : widths) t += w;
  return t;
}

Point2 lateral(const PathSample& ps, double offset) {
  return ps.position + offset * left_normal(ps.heading);
}

std::vector<Point2> strip_ring(const RoadPiece& piece, int samples) {
  const std::vector<PathSample> pts = piece.path.sample(samples);
  const double len = piece.path.length();
  std::vector<Point2> right_edge;
  std::vector<Point2> left_edge;
  for (const PathSample& ps : pts) {
    const CrossSection cs = cross_section(piece, ps.s / len);
    right_edge.push_back(lateral(ps, cs.offset - side_total(cs.right)));
    left_edge.push_back(lateral(ps, cs.offset + side_total(cs.left)));
  }
  std::vector<Point2> ring = std::move(right_edge);
  ring.insert(ring.end(), left_edge.rbegin(), left_edge.rend());
  return ring;
}

std::vector<Point2> rectangle(Point2 from, double heading, double length, double width) {
  const Point2 d = direction(heading);
  const Point2 n = left_normal(heading);
  const double h = 0.5 * width;
  const Point2 to = from + length * d;
  return {from - h * n, to - h * n, to + h * n, from + h * n};
}

std::vector<Point2> disc(Point2 center, double radius, int vertices) {
  std::vector<Point2> ring;
  for (int i = 0; i < vertices; ++i) {
    ring.push_back(center + radius * direction(kTwoPi * i / vertices));
  }
  return ring;
}

void check_curvature(const RoadPiece& piece) {
  if (piece.in_junction) return;
  const double kappa = piece.path.max_abs_curvature();
  if (kappa == 0.0) return;
  double extent = 0.0;
  for (double f : {0.0, 1.0}) {
    const CrossSection cs = cross_section(piece, f);
    extent = std::max(extent, std::abs(cs.offset + side_total(cs.left)));
    extent = std::max(extent, std::abs(cs.offset - side_total(cs.right)));
  }
  if (kappa * extent >= kCurvatureMargin) {
    throw InstantiationError("curvature too tight for road width on piece '" + piece.name + "'");
  }
}

void add_polylines(ComponentInstance& inst, int index) {
  const RoadPiece& piece = inst.pieces[static_cast<std::size_t>(index)];
  const std::vector<PathSample> pts = piece.path.sample(kExportSamples);
  const double len = piece.path.length();

  Polyline center{index, 0, piece.center_marking, {}};
  std::vector<Polyline> right_c;
  std::vector<Polyline> right_b;
  std::vector<Polyline> left_c;
  std::vector<Polyline> left_b;
  for (const LaneSpec& l : piece.right) {
    right_c.push_back({index, l.id, l.outer_marking, {}});
    right_b.push_back({index, l.id, l.outer_marking, {}});
  }
  for (const LaneSpec& l : piece.left) {
    left_c.push_back({index, l.id, l.outer_marking, {}});
    left_b.push_back({index, l.id, l.outer_marking, {}});
  }

  for (const PathSample& ps : pts) {
    const CrossSection cs = cross_section(piece, ps.s / len);
    center.points.push_back(lateral(ps, cs.offset));
    double acc = 0.0;
    for (std::size_t k = 0; k < cs.right.size(); ++k) {
      right_c[k].points.push_back(lateral(ps, cs.offset - acc - 0.5 * cs.right[k]));
      acc += cs.right[k];
      right_b[k].points.push_back(lateral(ps, cs.offset - acc));
    }
    acc = 0.0;
    for (std::size_t k = 0; k < cs.left.size(); ++k) {
      left_c[k].points.push_back(lateral(ps, cs.offset + acc + 0.5 * cs.left[k]));
      acc += cs.left[k];
      left_b[k].points.push_back(lateral(ps, cs.offset + acc));
    }
  }

  inst.boundaries.push_back(std::move(center));
  for (auto& p : left_b) inst.boundaries.push_back(std::move(p));
  for (auto& p : right_b) inst.boundaries.push_back(std::move(p));
  for (auto& p : left_c) inst.centerlines.push_back(std::move(p));
  for (auto& p : right_c) inst.centerlines.push_back(std::move(p));
}

// Pieces, anchors and footprint pieces for one kind, before polylines.
struct Layout {
  std::vector<RoadPiece> pieces;
  int entry_piece = 0;
  std::vector<EndpointAnchor> anchors;
  std::vector<Pose> endpoint_poses;
  bool has_junction = false;
  std::vector<JunctionConnection> connections;
  std::vector<std::vector<Point2>> footprint_pieces;
};

PieceLink link_piece(int piece, bool at_start) { return PieceLink{PieceLink::Target::Piece, piece, at_start}; }
PieceLink link_junction() { return PieceLink{PieceLink::Target::Junction, -1, true}; }

Layout single_road(const ComponentTemplate& t, ReferencePath path, double width) {
  Layout out;
  RoadPiece piece = make_piece("main", std::move(path), t.signature, t.endpoint_signatures[0], width);
  check_curvature(piece);
  out.endpoint_poses.push_back(piece.path.end_pose());
  out.footprint_pieces.push_back(strip_ring(piece, kFootprintSamples));
  out.pieces.push_back(std::move(piece));
  out.anchors.push_back({0, true});
  return out;
}

Layout build_curve(const ComponentTemplate& t, const ComponentParams& p) {
  const auto* cp = std::get_if<CurveParams>(&p.kind_specific);
  if (cp == nullptr) throw InstantiationError("Curve requires curve control points");
  if (distance(cp->p0, p.start.position) > 1e-5 * std::max(1.0, norm(p.start.position))) {
    throw InstantiationError("curve p0 must coincide with the start position");
  }
  const Point2 tangent = cp->p1 - cp->p0;
  if (norm(tangent) < 1e-9 ||
      std::abs(heading_difference(std::atan2(tangent.y, tangent.x), p.start.heading)) > 1e-4) {
    throw InstantiationError("curve must leave the start pose along its heading");
  }
  CubicBezier bez;
  try {
    bez = CubicBezier::make(cp->p0, cp->p1, cp->p2, cp->p3);
  } catch (const ValidationError& e) {
    throw InstantiationError(e.what());
  }
  if (norm(cp->p3 - cp->p2) < 1e-9) throw InstantiationError("curve end tangent is undefined");
  return single_road(t, ReferencePath({PathSegment::curve(bez)}), p.lane_width);
}

Layout build_uturn(const ComponentTemplate& t, const ComponentParams& p) {
  const auto* up = std::get_if<UTurnParams>(&p.kind_specific);
  if (up == nullptr) throw InstantiationError("UTurn requires spacing and apex parameters");
  const double road_width = t.signature.lane_count * p.lane_width;
  if (!(up->spacing > road_width)) throw InstantiationError("UTurn spacing must exceed the road width");
  if (!(up->apex > 0.0) || !std::isfinite(up->apex)) throw InstantiationError("UTurn apex must be positive");

  const double h = p.start.heading;
  const Point2 p0 = p.start.position + p.length * direction(h);
  const double handle = 4.0 / 3.0 * (0.5 * up->spacing + up->apex);
  const Point2 across = up->spacing * left_normal(h);
  const CubicBezier turn = CubicBezier::make(p0, p0 + handle * direction(h), p0 + across + handle * direction(h),
                                             p0 + across);
  return single_road(t,
                     ReferencePath({PathSegment::line(p.start, p.length), PathSegment::curve(turn),
                                    PathSegment::line(Pose::make(p0 + across, h + kPi), p.length)}),
                     p.lane_width);
}

Layout build_fork(const ComponentTemplate& t, const ComponentParams& p) {
  Layout out;
  out.has_junction = true;
  const double w = p.lane_width;
  const double road_width = t.signature.lane_count * w;
  const double delta = t.shape.fork_divergence;
  const double h = p.start.heading;
  const double trunk_len = p.length / 3.0;
  const double branch_len = 2.0 * p.length / 3.0;
  const InterfaceSignature& sig = t.signature;

  if (t.variant == Variant::Split) {
    const Pose j = advance_pose(p.start, trunk_len);
    RoadPiece trunk = make_piece("trunk", ReferencePath({PathSegment::line(p.start, trunk_len)}), sig, sig, w);
    trunk.successor = link_junction();
    RoadPiece left = make_piece("branch_left",
                                ReferencePath({PathSegment::line(Pose::make(j.position, h + delta), branch_len)}),
                                sig, sig, w);
    RoadPiece right = make_piece("branch_right",
                                 ReferencePath({PathSegment::line(Pose::make(j.position, h - delta), branch_len)}),
                                 sig, sig, w);
    for (RoadPiece* b : {&left, &right}) {
      b->in_junction = true;
      b->predecessor = link_piece(0, false);
    }
    out.endpoint_poses = {left.path.end_pose(), right.path.end_pose()};
    out.footprint_pieces = {rectangle(p.start.position, h, trunk_len, road_width),
                            rectangle(j.position, h + delta, branch_len, road_width),
                            rectangle(j.position, h - delta, branch_len, road_width)};
    out.pieces = {std::move(trunk), std::move(left), std::move(right)};
    out.entry_piece = 0;
    out.anchors = {{1, true}, {2, true}};
    out.connections = {{0, 1, true}, {0, 2, true}};
    return out;
  }

  // Merge: enter on one branch, leave on the trunk; the other branch's far
  // end is the second endpoint.
  const double trunk_h = h - delta;
  const double other_h = trunk_h - delta;
  const Pose j = advance_pose(p.start, branch_len);
  const Point2 far = j.position - branch_len * direction(other_h);
  RoadPiece entry = make_piece("branch_entry", ReferencePath({PathSegment::line(p.start, branch_len)}), sig, sig, w);
  RoadPiece trunk = make_piece("trunk", ReferencePath({PathSegment::line(Pose::make(j.position, trunk_h), trunk_len)}),
                               sig, sig, w);
  RoadPiece other = make_piece("branch_other",
                               ReferencePath({PathSegment::line(Pose::make(far, other_h), branch_len)}), sig, sig, w);
  entry.in_junction = true;
  entry.successor = link_piece(1, true);
  other.in_junction = true;
  other.successor = link_piece(1, true);
  trunk.predecessor = link_junction();
  out.endpoint_poses = {trunk.path.end_pose(), Pose::make(far, other_h + kPi)};
  out.footprint_pieces = {rectangle(p.start.position, h, branch_len, road_width),
                          rectangle(j.position, trunk_h, trunk_len, road_width),
                          rectangle(far, other_h, branch_len, road_width)};
  out.pieces = {std::move(entry), std::move(trunk), std::move(other)};
  out.entry_piece = 0;
  out.anchors = {{1, true}, {2, false}};
  out.connections = {{1, 0, false}, {1, 2, false}};
  return out;
}

// Junction with straight arms around a center: the entry arm plus exits at
// the given headings. `core` is the distance from the center to where arms
// begin. Connectors join every pair of arms through the core unless a ring
// is supplied.
struct ArmSpec {
  std::string name;
  double heading;  // outward
};

Layout build_junction(const ComponentTemplate& t, const ComponentParams& p, const std::vector<ArmSpec>& exits,
                      double core, bool ring) {
  Layout out;
  out.has_junction = true;
  const double w = p.lane_width;
  const double h = p.start.heading;
  const InterfaceSignature& sig = t.signature;
  const double arm_len = 0.5 * p.length - core;
  if (!(arm_len >= kMinArm)) throw InstantiationError("junction arms shorter than the minimum arm length");
  const Point2 center = p.start.position + 0.5 * p.length * direction(h);

  RoadPiece entry = make_piece("arm_entry", ReferencePath({PathSegment::line(p.start, arm_len)}), sig, sig, w);
  entry.successor = link_junction();
  out.pieces.push_back(std::move(entry));
  // Poses at each arm's junction side: heading into and out of the junction.
  std::vector<Pose> inner_in = {out.pieces[0].path.end_pose()};
  std::vector<Pose> inner_out = {Pose::make(inner_in[0].position, h + kPi)};
  std::vector<bool> inner_at_start = {false};

  for (const ArmSpec& arm : exits) {
    const Pose start = Pose::make(center + core * direction(arm.heading), arm.heading);
    RoadPiece piece = make_piece(arm.name, ReferencePath({PathSegment::line(start, arm_len)}), sig, sig, w);
    piece.predecessor = link_junction();
    out.endpoint_poses.push_back(piece.path.end_pose());
    out.anchors.push_back({static_cast<int>(out.pieces.size()), true});
    inner_in.push_back(Pose::make(start.position, arm.heading + kPi));
    inner_out.push_back(start);
    inner_at_start.push_back(true);
    out.pieces.push_back(std::move(piece));
  }
  const int arms = static_cast<int>(out.pieces.size());

  if (!ring) {
    for (int i = 0; i < arms; ++i) {
      for (int j = i + 1; j < arms; ++j) {
        const Pose& from = inner_in[static_cast<std::size_t>(i)];
        const Pose& to = inner_out[static_cast<std::size_t>(j)];
        PathSegment seg = std::abs(heading_difference(from.heading, to.heading)) < 1e-9
                              ? PathSegment::line(from, distance(from.position, to.position))
                              : PathSegment::curve(bridge_curve(from, to));
        RoadPiece conn = make_piece("connector_" + std::to_string(i) + "_" + std::to_string(j),
                                    ReferencePath({seg}), sig, sig, w);
        conn.in_junction = true;
        conn.predecessor = link_piece(i, inner_at_start[static_cast<std::size_t>(i)]);
        conn.successor = link_piece(j, inner_at_start[static_cast<std::size_t>(j)]);
        const int idx = static_cast<int>(out.pieces.size());
        out.connections.push_back({i, idx, true});
        out.connections.push_back({j, idx, false});
        out.pieces.push_back(std::move(conn));
      }
    }
    return out;
  }

  // Counterclockwise ring of four quarter arcs starting at the entry arm.
  const double island = t.shape.roundabout_island_radius;
  const int ring_lanes = std::max(1, t.signature.lane_count / 2);
  const double ring_radius = island + 0.5 * ring_lanes * w;
  const InterfaceSignature ring_sig{ring_lanes, sig.marking, false};
  const int first_ring = arms;
  // Arm whose attach angle starts each quarter: entry, right, straight, left.
  const std::array<int, 4> arm_at_quarter = {0, 3, 2, 1};
  for (int k = 0; k < 4; ++k) {
    const double theta = h + kPi + k * 0.5 * kPi;
    const Pose start = Pose::make(center + ring_radius * direction(theta), theta + 0.5 * kPi);
    RoadPiece arc = make_piece("ring_" + std::to_string(k),
                               ReferencePath({PathSegment::arc(start, 0.5 * kPi * ring_radius, 1.0 / ring_radius)}),
                               ring_sig, ring_sig, w);
    arc.in_junction = true;
    arc.predecessor = link_piece(first_ring + (k + 3) % 4, false);
    arc.successor = link_piece(first_ring + (k + 1) % 4, true);
    out.connections.push_back({arm_at_quarter[static_cast<std::size_t>(k)], first_ring + k, true});
    out.pieces.push_back(std::move(arc));
  }
  return out;
}

Layout build_layout(const ComponentTemplate& t, const ComponentParams& p) {
  const double h = p.start.heading;
  const double road_width = t.signature.lane_count * p.lane_width;
  switch (t.kind) {
    case ComponentKind::Straight:
    case ComponentKind::LaneSwitch:
      return single_road(t, ReferencePath({PathSegment::line(p.start, p.length)}), p.lane_width);
    case ComponentKind::Curve:
      return build_curve(t, p);
    case ComponentKind::UTurn:
      return build_uturn(t, p);
    case ComponentKind::Fork:
      return build_fork(t, p);
    case ComponentKind::TIntersection: {
      const double core = 0.5 * road_width;
      Layout out = build_junction(t, p, {{"arm_left", h + 0.5 * kPi}, {"arm_right", h - 0.5 * kPi}}, core, false);
      const Point2 center = p.start.position + 0.5 * p.length * direction(h);
      out.footprint_pieces = {
          rectangle(p.start.position, h, 0.5 * p.length, road_width),
          rectangle(center - 0.5 * p.length * left_normal(h), h + 0.5 * kPi, p.length, road_width)};
      return out;
    }
    case ComponentKind::Intersection: {
      const double core = 0.5 * road_width;
      Layout out = build_junction(
          t, p, {{"arm_left", h + 0.5 * kPi}, {"arm_straight", h}, {"arm_right", h - 0.5 * kPi}}, core, false);
      const Point2 center = p.start.position + 0.5 * p.length * direction(h);
      out.footprint_pieces = {
          rectangle(p.start.position, h, p.length, road_width),
          rectangle(center - 0.5 * p.length * left_normal(h), h + 0.5 * kPi, p.length, road_width)};
      return out;
    }
    case ComponentKind::Roundabout: {
      const int ring_lanes = std::max(1, t.signature.lane_count / 2);
      const double outer = t.shape.roundabout_island_radius + ring_lanes * p.lane_width;
      Layout out = build_junction(
          t, p, {{"arm_left", h + 0.5 * kPi}, {"arm_straight", h}, {"arm_right", h - 0.5 * kPi}}, outer, true);
      const Point2 center = p.start.position + 0.5 * p.length * direction(h);
      out.footprint_pieces = {
          disc(center, outer, 4 * kFootprintSamples), rectangle(p.start.position, h, p.length, road_width),
          rectangle(center - 0.5 * p.length * left_normal(h), h + 0.5 * kPi, p.length, road_width)};
      return out;
    }
  }
  throw InstantiationError("unknown component kind");
}

void check_params(const ComponentTemplate& t, const ComponentParams& p) {
  if (!(p.length > 0.0) || !std::isfinite(p.length)) throw InstantiationError("length must be positive");
  if (!(p.lane_width > 0.0) || !std::isfinite(p.lane_width)) throw InstantiationError("lane width must be positive");
  if (!is_finite(p.start.position) || !std::isfinite(p.start.heading)) {
    throw InstantiationError("start pose must be finite");
  }
  const bool wants_curve = t.kind == ComponentKind::Curve;
  const bool wants_uturn = t.kind == ComponentKind::UTurn;
  if (wants_curve != std::holds_alternative<CurveParams>(p.kind_specific) ||
      wants_uturn != std::holds_alternative<UTurnParams>(p.kind_specific)) {
    throw InstantiationError("kind-specific parameters do not match " + std::string(kind_name(t.kind)));
  }
  if (static_cast<int>(t.endpoint_signatures.size()) != endpoint_count(t.kind)) {
    throw InstantiationError("template declares the wrong number of endpoints");
  }
}

}  // namespace

ComponentInstance instantiate(const ComponentTemplate& tmpl, const ComponentParams& params) {
  check_params(tmpl, params);
  ComponentParams p = params;
  p.start = Pose::make(params.start.position, params.start.heading);

  Layout layout = build_layout(tmpl, p);
  Footprint footprint = [&] {
    try {
      return layout.footprint_pieces.size() == 1 ? Footprint::from_polygon(layout.footprint_pieces[0])
                                                 : Footprint::union_of(layout.footprint_pieces);
    } catch (const ValidationError& e) {
      throw InstantiationError(std::string("footprint: ") + e.what());
    }
  }();

  ComponentInstance inst{
      .id = 0,
      .tmpl = tmpl,
      .params = p,
      .pieces = std::move(layout.pieces),
      .entry_piece = layout.entry_piece,
      .anchors = std::move(layout.anchors),
      .has_junction = layout.has_junction,
      .junction_connections = std::move(layout.connections),
      .centerlines = {},
      .boundaries = {},
      .footprint = std::move(footprint),
      .endpoints = {},
  };
  for (int i = 0; i < static_cast<int>(inst.pieces.size()); ++i) add_polylines(inst, i);
  for (std::size_t i = 0; i < layout.endpoint_poses.size(); ++i) {
    inst.endpoints.push_back(Endpoint{layout.endpoint_poses[i], tmpl.endpoint_signatures[i], 0, static_cast<int>(i)});
  }
  return inst;
}

}  // namespace roadgen
