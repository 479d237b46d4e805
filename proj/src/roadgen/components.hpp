#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "roadgen/geometry.hpp"
#include "roadgen/numeric.hpp"
#include "roadgen/path.hpp"

namespace roadgen {

enum class ComponentKind {
  Straight,
  Curve,
  LaneSwitch,
  Fork,
  TIntersection,
  Intersection,
  UTurn,
  Roundabout,
};

inline constexpr std::size_t kKindCount = 8;
inline constexpr std::array<ComponentKind, kKindCount> kAllKinds = {
    ComponentKind::Straight,      ComponentKind::Curve,        ComponentKind::LaneSwitch,
    ComponentKind::Fork,          ComponentKind::TIntersection, ComponentKind::Intersection,
    ComponentKind::UTurn,         ComponentKind::Roundabout};

enum class LaneMarking {
  WhiteDashed,
  WhiteSolid,
  WhiteDoubleSolid,
  YellowDashed,
  YellowSolid,
  YellowDoubleSolid,
  YellowDashedSolid,
};

inline constexpr std::size_t kMarkingCount = 7;
inline constexpr std::array<LaneMarking, kMarkingCount> kAllMarkings = {
    LaneMarking::WhiteDashed,  LaneMarking::WhiteSolid,        LaneMarking::WhiteDoubleSolid,
    LaneMarking::YellowDashed, LaneMarking::YellowSolid,       LaneMarking::YellowDoubleSolid,
    LaneMarking::YellowDashedSolid};

// Template flavours that share kind and start signature.
enum class Variant {
  None,
  Split,   // Fork: one road into two
  Merge,   // Fork: two roads into one
  Widen,   // LaneSwitch: gains lanes
  Narrow,  // LaneSwitch: loses lanes
};

std::string_view kind_name(ComponentKind kind);
std::string_view marking_name(LaneMarking marking);
std::string_view variant_name(Variant variant);
std::optional<ComponentKind> parse_kind(std::string_view name);
std::optional<LaneMarking> parse_marking(std::string_view name);
std::optional<Variant> parse_variant(std::string_view name);

inline constexpr int kMinLanes = 1;
inline constexpr int kMaxLanes = 6;

// Endpoint type key: two sides may connect only if their signatures are equal.
struct InterfaceSignature {
  int lane_count = 1;
  LaneMarking marking = LaneMarking::WhiteSolid;
  bool bidirectional = false;

  friend auto operator<=>(const InterfaceSignature&, const InterfaceSignature&) = default;
};

std::string to_string(const InterfaceSignature& sig);

// Catalog-level shape constants shared by all templates of a table.
struct ShapeOptions {
  double fork_divergence = deg_to_rad(30.0);  // each branch, from the trunk axis
  double roundabout_island_radius = 12.0;     // meters

  friend bool operator==(const ShapeOptions&, const ShapeOptions&) = default;
};

struct ComponentTemplate {
  int template_id = 0;
  ComponentKind kind = ComponentKind::Straight;
  Variant variant = Variant::None;
  InterfaceSignature signature;
  std::vector<InterfaceSignature> endpoint_signatures;
  ShapeOptions shape;

  friend bool operator==(const ComponentTemplate&, const ComponentTemplate&) = default;
};

// Endpoints per kind: every kind has one entry; the rest are endpoints.
int endpoint_count(ComponentKind kind);

// Builds a template, deriving endpoint signatures from kind and variant.
// Throws ValidationError when the combination is not realizable (lane count
// outside 1..6, lane switch target out of range, missing or stray variant).
ComponentTemplate make_template(int template_id, ComponentKind kind, Variant variant,
                                InterfaceSignature signature, ShapeOptions shape = {});

// Templates whose start signature equals `sig`, in catalog order.
std::vector<ComponentTemplate> candidates_for(const InterfaceSignature& sig,
                                              std::span<const ComponentTemplate> catalog);

struct CurveParams {
  Point2 p0;
  Point2 p1;
  Point2 p2;
  Point2 p3;

  friend bool operator==(const CurveParams&, const CurveParams&) = default;
};

struct UTurnParams {
  double spacing = 0.0;  // D: centerline distance between the two straights
  double apex = 0.0;     // X: how far the turn extends past a semicircle

  friend bool operator==(const UTurnParams&, const UTurnParams&) = default;
};

struct ComponentParams {
  double length = 0.0;      // L
  double lane_width = 0.0;  // W
  Pose start;
  std::variant<std::monostate, CurveParams, UTurnParams> kind_specific;

  friend bool operator==(const ComponentParams&, const ComponentParams&) = default;
};

struct Endpoint {
  Pose pose;  // outward heading
  InterfaceSignature signature;
  int owner = 0;
  int index = 0;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct LaneSpec {
  int id = 0;  // >0 left of the center lane, <0 right
  double width_start = 0.0;
  double width_end = 0.0;
  LaneMarking outer_marking = LaneMarking::WhiteSolid;

  friend bool operator==(const LaneSpec&, const LaneSpec&) = default;
};

// Link from a piece end to another piece of the same component or to the
// component's junction.
struct PieceLink {
  enum class Target { None, Piece, Junction };
  Target target = Target::None;
  int piece = -1;
  bool at_start = true;  // contact at the target piece's start (else its end)

  friend bool operator==(const PieceLink&, const PieceLink&) = default;
};

// A lane group over one reference path; exported as one road.
struct RoadPiece {
  std::string name;
  ReferencePath path;
  double offset_start = 0.0;  // center lane offset from the path, + to the left
  double offset_end = 0.0;
  std::vector<LaneSpec> left;   // ids 1..n, inner to outer
  std::vector<LaneSpec> right;  // ids -1..-n, inner to outer
  LaneMarking center_marking = LaneMarking::WhiteSolid;
  bool in_junction = false;
  PieceLink predecessor;
  PieceLink successor;

  friend bool operator==(const RoadPiece&, const RoadPiece&) = default;
};

struct JunctionConnection {
  int incoming_piece = 0;
  int connecting_piece = 0;
  bool contact_at_start = true;

  friend bool operator==(const JunctionConnection&, const JunctionConnection&) = default;
};

// Which piece end carries each endpoint.
struct EndpointAnchor {
  int piece = 0;
  bool at_end = true;

  friend bool operator==(const EndpointAnchor&, const EndpointAnchor&) = default;
};

struct Polyline {
  int piece = 0;
  int lane_id = 0;  // boundaries: lane whose outer edge this is; 0 = center lane
  LaneMarking marking = LaneMarking::WhiteSolid;
  std::vector<Point2> points;

  friend bool operator==(const Polyline&, const Polyline&) = default;
};

struct ComponentInstance {
  int id = 0;
  ComponentTemplate tmpl;
  ComponentParams params;
  std::vector<RoadPiece> pieces;
  int entry_piece = 0;
  std::vector<EndpointAnchor> anchors;
  bool has_junction = false;
  std::vector<JunctionConnection> junction_connections;
  std::vector<Polyline> centerlines;
  std::vector<Polyline> boundaries;
  Footprint footprint;
  std::vector<Endpoint> endpoints;

  friend bool operator==(const ComponentInstance&, const ComponentInstance&) = default;
};

// Sampling density per curved segment.
inline constexpr int kFootprintSamples = 32;
inline constexpr int kExportSamples = 128;

// Places `tmpl` with `params`. Throws InstantiationError when the parameters
// cannot be realized (non-positive sizes, curve not starting at the start
// pose, curvature too tight for the road width, arms shorter than 1 m, ...).
ComponentInstance instantiate(const ComponentTemplate& tmpl, const ComponentParams& params);

// Sets the instance id and every endpoint's owner.
void assign_id(ComponentInstance& instance, int id);

// Lane counts right/left of the center lane for a road of `sig`.
struct SideCounts {
  int right = 0;
  int left = 0;
};
SideCounts side_counts(const InterfaceSignature& sig);

}  // namespace roadgen
