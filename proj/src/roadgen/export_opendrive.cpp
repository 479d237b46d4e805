#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "roadgen/errors.hpp"
#include "roadgen/export.hpp"
#include "roadgen/xml_dom.hpp"

namespace roadgen {

RoadMarkStyle road_mark_for(LaneMarking marking) {
  switch (marking) {
    case LaneMarking::WhiteDashed: return {"broken", "white"};
    case LaneMarking::WhiteSolid: return {"solid", "white"};
    case LaneMarking::WhiteDoubleSolid: return {"solid solid", "white"};
    case LaneMarking::YellowDashed: return {"broken", "yellow"};
    case LaneMarking::YellowSolid: return {"solid", "yellow"};
    case LaneMarking::YellowDoubleSolid: return {"solid solid", "yellow"};
    case LaneMarking::YellowDashedSolid: return {"solid broken", "yellow"};
  }
  return {"none", "standard"};
}

namespace {

std::string num(double v) { return format_real(v == 0.0 ? 0.0 : v, 12); }

struct LinkOut {
  std::string element_type;  // "road" / "junction"
  int id = 0;
  std::string contact;  // roads only
};

struct RoadRef {
  int instance = 0;
  int piece = 0;
};

class OdrWriter {
 public:
  explicit OdrWriter(const RoadScenario& s) : s_(s) {
    int next = 1;
    for (std::size_t i = 0; i < s.instances.size(); ++i) {
      road_ids_.emplace_back();
      for (std::size_t k = 0; k < s.instances[i].pieces.size(); ++k) road_ids_[i].push_back(next++);
    }
    for (std::size_t i = 0; i < s.instances.size(); ++i) {
      junction_ids_.push_back(s.instances[i].has_junction ? next++ : -1);
    }
    for (const Connection& c : s.connections) {
      const ComponentInstance& parent = s.instances[static_cast<std::size_t>(c.from.instance)];
      const ComponentInstance& child = s.instances[static_cast<std::size_t>(c.to_instance)];
      const EndpointAnchor& a = parent.anchors[static_cast<std::size_t>(c.from.endpoint)];
      const LinkOut to_child{"road", road(c.to_instance, child.entry_piece), "start"};
      (a.at_end ? successors_ : predecessors_)[{c.from.instance, a.piece}] = to_child;
      predecessors_[{c.to_instance, child.entry_piece}] =
          LinkOut{"road", road(c.from.instance, a.piece), a.at_end ? "end" : "start"};
    }
  }

  std::string write() {
    BoundingBox box = s_.instances.front().footprint.bounds();
    for (const ComponentInstance& inst : s_.instances) box.expand(inst.footprint.bounds());
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<OpenDRIVE>\n";
    out_ << "  <header revMajor=\"1\" revMinor=\"6\" name=\"roadgen\" version=\"1.0\" north=\"" << num(box.max_y)
         << "\" south=\"" << num(box.min_y) << "\" east=\"" << num(box.max_x) << "\" west=\"" << num(box.min_x)
         << "\" vendor=\"roadgen\"/>\n";
    for (std::size_t i = 0; i < s_.instances.size(); ++i) {
      for (std::size_t k = 0; k < s_.instances[i].pieces.size(); ++k) {
        write_road(static_cast<int>(i), static_cast<int>(k));
      }
    }
    for (std::size_t i = 0; i < s_.instances.size(); ++i) {
      if (s_.instances[i].has_junction) write_junction(static_cast<int>(i));
    }
    out_ << "</OpenDRIVE>\n";
    return out_.str();
  }

 private:
  int road(int instance, int piece) const {
    return road_ids_[static_cast<std::size_t>(instance)][static_cast<std::size_t>(piece)];
  }

  std::optional<LinkOut> internal_link(int instance, const PieceLink& link) const {
    switch (link.target) {
      case PieceLink::Target::None: return std::nullopt;
      case PieceLink::Target::Piece:
        return LinkOut{"road", road(instance, link.piece), link.at_start ? "start" : "end"};
      case PieceLink::Target::Junction:
        return LinkOut{"junction", junction_ids_[static_cast<std::size_t>(instance)], ""};
    }
    return std::nullopt;
  }

  void write_link(const char* tag, const std::optional<LinkOut>& link) {
    if (!link) return;
    out_ << "      <" << tag << " elementType=\"" << link->element_type << "\" elementId=\"" << link->id << "\"";
    if (!link->contact.empty()) out_ << " contactPoint=\"" << link->contact << "\"";
    out_ << "/>\n";
  }

  void write_geometry(const PathSegment& seg, double s) {
    out_ << "      <geometry s=\"" << num(s) << "\" x=\"" << num(seg.start.position.x) << "\" y=\""
         << num(seg.start.position.y) << "\" hdg=\"" << num(seg.start.heading) << "\" length=\""
         << num(seg.length) << "\">\n";
    switch (seg.type) {
      case SegmentType::Line:
        out_ << "        <line/>\n";
        break;
      case SegmentType::Arc:
        out_ << "        <arc curvature=\"" << num(seg.curvature) << "\"/>\n";
        break;
      case SegmentType::Bezier: {
        const CubicBezier& b = seg.bezier;
        const Point2 c1 = 3.0 * (b.p1 - b.p0);
        const Point2 c2 = 3.0 * (b.p0 - 2.0 * b.p1 + b.p2);
        const Point2 c3 = b.p3 - 3.0 * b.p2 + 3.0 * b.p1 - b.p0;
        const Point2 u = direction(seg.start.heading);
        const Point2 v = left_normal(seg.start.heading);
        out_ << "        <paramPoly3 aU=\"0\" bU=\"" << num(dot(c1, u)) << "\" cU=\"" << num(dot(c2, u))
             << "\" dU=\"" << num(dot(c3, u)) << "\" aV=\"0\" bV=\"" << num(dot(c1, v)) << "\" cV=\""
             << num(dot(c2, v)) << "\" dV=\"" << num(dot(c3, v)) << "\" pRange=\"normalized\"/>\n";
        break;
      }
    }
    out_ << "      </geometry>\n";
  }

  void write_lane(const LaneSpec& lane, double length) {
    const RoadMarkStyle mark = road_mark_for(lane.outer_marking);
    out_ << "          <lane id=\"" << lane.id << "\" type=\"driving\" level=\"false\">\n";
    out_ << "            <width sOffset=\"0\" a=\"" << num(lane.width_start) << "\" b=\""
         << num((lane.width_end - lane.width_start) / length) << "\" c=\"0\" d=\"0\"/>\n";
    out_ << "            <roadMark sOffset=\"0\" type=\"" << mark.type << "\" color=\"" << mark.color
         << "\" width=\"0.15\"/>\n";
    out_ << "          </lane>\n";
  }

  void write_road(int instance, int piece_index) {
    const ComponentInstance& inst = s_.instances[static_cast<std::size_t>(instance)];
    const RoadPiece& piece = inst.pieces[static_cast<std::size_t>(piece_index)];
    const double length = piece.path.length();
    const int junction = piece.in_junction ? junction_ids_[static_cast<std::size_t>(instance)] : -1;
    out_ << "  <road name=\"c" << instance << "_" << piece.name << "\" length=\"" << num(length) << "\" id=\""
         << road(instance, piece_index) << "\" junction=\"" << junction << "\">\n";

    std::optional<LinkOut> pred = internal_link(instance, piece.predecessor);
    std::optional<LinkOut> succ = internal_link(instance, piece.successor);
    if (const auto it = predecessors_.find({instance, piece_index}); it != predecessors_.end()) pred = it->second;
    if (const auto it = successors_.find({instance, piece_index}); it != successors_.end()) succ = it->second;
    if (pred || succ) {
      out_ << "    <link>\n";
      write_link("predecessor", pred);
      write_link("successor", succ);
      out_ << "    </link>\n";
    }

    out_ << "    <planView>\n";
    double s = 0.0;
    for (const PathSegment& seg : piece.path.segments()) {
      write_geometry(seg, s);
      s += seg.length;
    }
    out_ << "    </planView>\n";

    out_ << "    <lanes>\n";
    out_ << "      <laneOffset s=\"0\" a=\"" << num(piece.offset_start) << "\" b=\""
         << num((piece.offset_end - piece.offset_start) / length) << "\" c=\"0\" d=\"0\"/>\n";
    out_ << "      <laneSection s=\"0\">\n";
    if (!piece.left.empty()) {
      out_ << "        <left>\n";
      for (auto it = piece.left.rbegin(); it != piece.left.rend(); ++it) write_lane(*it, length);
      out_ << "        </left>\n";
    }
    const RoadMarkStyle center = road_mark_for(piece.center_marking);
    out_ << "        <center>\n          <lane id=\"0\" type=\"none\" level=\"false\">\n"
         << "            <roadMark sOffset=\"0\" type=\"" << center.type << "\" color=\"" << center.color
         << "\" width=\"0.15\"/>\n          </lane>\n        </center>\n";
    if (!piece.right.empty()) {
      out_ << "        <right>\n";
      for (const LaneSpec& lane : piece.right) write_lane(lane, length);
      out_ << "        </right>\n";
    }
    out_ << "      </laneSection>\n    </lanes>\n  </road>\n";
  }

  // Lanes carrying traffic into (or out of) the junction at a road end.
  static std::vector<int> lanes_at(const RoadPiece& piece, bool at_start) {
    std::vector<int> ids;
    if (at_start) {
      for (const LaneSpec& l : piece.left) ids.push_back(l.id);
    } else {
      for (const LaneSpec& l : piece.right) ids.push_back(l.id);
    }
    return ids;
  }

  void write_junction(int instance) {
    const ComponentInstance& inst = s_.instances[static_cast<std::size_t>(instance)];
    out_ << "  <junction id=\"" << junction_ids_[static_cast<std::size_t>(instance)] << "\" name=\"junction_c"
         << instance << "\">\n";
    int id = 0;
    for (const JunctionConnection& jc : inst.junction_connections) {
      const RoadPiece& incoming = inst.pieces[static_cast<std::size_t>(jc.incoming_piece)];
      const RoadPiece& connecting = inst.pieces[static_cast<std::size_t>(jc.connecting_piece)];
      out_ << "    <connection id=\"" << id++ << "\" incomingRoad=\"" << road(instance, jc.incoming_piece)
           << "\" connectingRoad=\"" << road(instance, jc.connecting_piece) << "\" contactPoint=\""
           << (jc.contact_at_start ? "start" : "end") << "\">\n";
      const bool incoming_at_start = incoming.predecessor.target == PieceLink::Target::Junction;
      const std::vector<int> from = lanes_at(incoming, incoming_at_start);
      const std::vector<int> to = lanes_at(connecting, !jc.contact_at_start);
      for (std::size_t k = 0; k < std::min(from.size(), to.size()); ++k) {
        out_ << "      <laneLink from=\"" << from[k] << "\" to=\"" << to[k] << "\"/>\n";
      }
      out_ << "    </connection>\n";
    }
    out_ << "  </junction>\n";
  }

  const RoadScenario& s_;
  std::vector<std::vector<int>> road_ids_;
  std::vector<int> junction_ids_;
  std::map<std::pair<int, int>, LinkOut> predecessors_;
  std::map<std::pair<int, int>, LinkOut> successors_;
  std::ostringstream out_;
};

}  // namespace

std::string to_opendrive(const RoadScenario& scenario) {
  if (scenario.instances.empty()) throw PreconditionError("to_opendrive: empty scenario");
  return OdrWriter(scenario).write();
}

// ---------------------------------------------------------------------------
// Subset validator

namespace {

using Node = rapidxml::xml_node<char>;

const std::set<std::string, std::less<>> kElements = {
    "OpenDRIVE", "header", "road", "link", "predecessor", "successor", "planView", "geometry", "line", "arc",
    "paramPoly3", "lanes", "laneOffset", "laneSection", "left", "center", "right", "lane", "width", "roadMark",
    "junction", "connection", "laneLink"};
const std::set<std::string, std::less<>> kMarkTypes = {"solid", "broken", "solid solid", "solid broken",
                                                       "broken solid", "broken broken", "none"};
const std::set<std::string, std::less<>> kMarkColors = {"white", "yellow", "standard"};

std::string name_of(const Node* n) { return std::string(n->name(), n->name_size()); }

std::optional<std::string> attr(const Node* n, const char* key) {
  const auto* a = n->first_attribute(key);
  if (a == nullptr) return std::nullopt;
  return std::string(a->value(), a->value_size());
}

std::optional<double> attr_num(const Node* n, const char* key) {
  const auto text = attr(n, key);
  if (!text || text->empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(text->c_str(), &end);
  if (end != text->c_str() + text->size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> attr_int(const Node* n, const char* key) {
  const auto text = attr(n, key);
  if (!text || text->empty()) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(text->c_str(), &end, 10);
  if (end != text->c_str() + text->size()) return std::nullopt;
  return static_cast<int>(v);
}

std::vector<const Node*> children(const Node* n, const char* name = nullptr) {
  std::vector<const Node*> out;
  for (const Node* c = n->first_node(name); c != nullptr; c = c->next_sibling(name)) out.push_back(c);
  return out;
}

struct GeomEval {
  double s = 0.0;
  double length = 0.0;
  Pose start;
  enum { Line, Arc, Poly } type = Line;
  double curvature = 0.0;
  std::array<double, 8> poly{};  // aU bU cU dU aV bV cV dV

  Point2 at_end() const {
    switch (type) {
      case Line: return advance_pose(start, length).position;
      case Arc: {
        if (curvature == 0.0) return advance_pose(start, length).position;
        const double r = 1.0 / curvature;
        const Point2 c = start.position + r * left_normal(start.heading);
        return c - r * left_normal(start.heading + length * curvature);
      }
      case Poly: {
        const double u = poly[0] + poly[1] + poly[2] + poly[3];
        const double v = poly[4] + poly[5] + poly[6] + poly[7];
        return start.position + u * direction(start.heading) + v * left_normal(start.heading);
      }
    }
    return start.position;
  }
};

struct RoadInfo {
  int id = 0;
  int junction = -1;
  double length = 0.0;
  Point2 start;
  Point2 end;
  std::set<int> lanes;
  struct Link {
    std::string type;
    int id = 0;
    std::string contact;
  };
  std::optional<Link> pred;
  std::optional<Link> succ;
};

class Validator {
 public:
  std::vector<std::string> run(std::string_view xml) {
    std::unique_ptr<XmlDocument> doc;
    try {
      doc = parse_xml(xml);
    } catch (const ParseError& e) {
      return {e.what()};
    }
    const Node* root = doc->root();
    if (name_of(root) != "OpenDRIVE") return {"root element must be OpenDRIVE"};
    check_names(root);

    const auto headers = children(root, "header");
    if (headers.size() != 1) {
      problem("expected exactly one header");
    } else if (attr(headers[0], "revMajor") != "1" || attr(headers[0], "revMinor") != "6") {
      problem("header must declare revMajor=1 revMinor=6");
    }
    for (const Node* r : children(root, "road")) read_road(r);
    for (const Node* j : children(root, "junction")) read_junction(j);
    if (roads_.empty()) problem("document has no roads");
    check_links();
    for (const auto& [id, road] : roads_) {
      if (road.junction != -1 && junctions_.count(road.junction) == 0) {
        problem("road " + std::to_string(id) + " references missing junction " + std::to_string(road.junction));
      }
    }
    check_connections();
    return problems_;
  }

 private:
  void problem(std::string text) { problems_.push_back(std::move(text)); }

  void check_names(const Node* n) {
    for (const Node* c = n->first_node(); c != nullptr; c = c->next_sibling()) {
      if (c->type() != rapidxml::node_element) continue;
      if (kElements.count(name_of(c)) == 0) problem("unsupported element <" + name_of(c) + ">");
      check_names(c);
    }
  }

  void read_road(const Node* r) {
    RoadInfo info;
    const auto id = attr_int(r, "id");
    const auto length = attr_num(r, "length");
    const auto junction = attr_int(r, "junction");
    if (!id || !length || !junction) {
      problem("road is missing id, length or junction");
      return;
    }
    const std::string where = "road " + std::to_string(*id);
    if (roads_.count(*id) != 0) problem(where + ": duplicate id");
    if (!(*length > 0.0)) problem(where + ": length must be positive");
    info.id = *id;
    info.length = *length;
    info.junction = *junction;

    if (const Node* link = r->first_node("link")) {
      for (const char* tag : {"predecessor", "successor"}) {
        const auto nodes = children(link, tag);
        if (nodes.size() > 1) problem(where + ": more than one " + tag);
        if (nodes.empty()) continue;
        RoadInfo::Link l;
        l.type = attr(nodes[0], "elementType").value_or("");
        const auto target = attr_int(nodes[0], "elementId");
        l.contact = attr(nodes[0], "contactPoint").value_or("");
        if ((l.type != "road" && l.type != "junction") || !target) {
          problem(where + ": malformed " + tag);
          continue;
        }
        if (l.type == "road" && l.contact != "start" && l.contact != "end") {
          problem(where + ": road " + tag + " needs contactPoint start or end");
        }
        l.id = *target;
        (std::string(tag) == "predecessor" ? info.pred : info.succ) = l;
      }
    }

    const auto plan = children(r, "planView");
    if (plan.size() != 1) {
      problem(where + ": expected one planView");
    } else {
      read_plan(plan[0], info, where);
    }

    const auto lanes = children(r, "lanes");
    if (lanes.size() != 1) {
      problem(where + ": expected one lanes element");
    } else {
      read_lanes(lanes[0], info, where);
    }
    roads_[info.id] = std::move(info);
  }

  void read_plan(const Node* plan, RoadInfo& info, const std::string& where) {
    std::vector<GeomEval> geoms;
    for (const Node* g : children(plan, "geometry")) {
      GeomEval e;
      const auto s = attr_num(g, "s");
      const auto x = attr_num(g, "x");
      const auto y = attr_num(g, "y");
      const auto hdg = attr_num(g, "hdg");
      const auto len = attr_num(g, "length");
      if (!s || !x || !y || !hdg || !len) {
        problem(where + ": geometry missing s/x/y/hdg/length");
        return;
      }
      if (!(*len > 0.0)) problem(where + ": geometry length must be positive");
      e.s = *s;
      e.length = *len;
      e.start = Pose{{*x, *y}, *hdg};
      std::size_t primitives = 0;
      for (const Node* c = g->first_node(); c != nullptr; c = c->next_sibling()) {
        if (c->type() != rapidxml::node_element) continue;
        ++primitives;
        const std::string kind = name_of(c);
        if (kind == "line") {
          e.type = GeomEval::Line;
        } else if (kind == "arc") {
          e.type = GeomEval::Arc;
          const auto k = attr_num(c, "curvature");
          if (!k) problem(where + ": arc without curvature");
          e.curvature = k.value_or(0.0);
        } else if (kind == "paramPoly3") {
          e.type = GeomEval::Poly;
          static const std::array<const char*, 8> keys = {"aU", "bU", "cU", "dU", "aV", "bV", "cV", "dV"};
          for (std::size_t i = 0; i < keys.size(); ++i) {
            const auto v = attr_num(c, keys[i]);
            if (!v) problem(where + ": paramPoly3 missing " + keys[i]);
            e.poly[i] = v.value_or(0.0);
          }
          if (attr(c, "pRange") != "normalized") problem(where + ": paramPoly3 must use pRange=normalized");
        } else {
          problem(where + ": unsupported geometry primitive <" + kind + ">");
        }
      }
      if (primitives != 1) problem(where + ": geometry must hold exactly one primitive");
      geoms.push_back(e);
    }
    if (geoms.empty()) {
      problem(where + ": planView has no geometry");
      return;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < geoms.size(); ++i) {
      if (std::abs(geoms[i].s - s) > 1e-6 * std::max(1.0, s)) problem(where + ": geometry s is not cumulative");
      if (i > 0 && distance(geoms[i - 1].at_end(), geoms[i].start.position) > 1e-3) {
        problem(where + ": geometry " + std::to_string(i) + " does not continue its predecessor");
      }
      s += geoms[i].length;
    }
    if (std::abs(s - info.length) > 1e-6 * std::max(1.0, s)) {
      problem(where + ": geometry lengths do not sum to the road length");
    }
    info.start = geoms.front().start.position;
    info.end = geoms.back().at_end();
  }

  void read_lanes(const Node* lanes, RoadInfo& info, const std::string& where) {
    const auto sections = children(lanes, "laneSection");
    if (sections.empty()) {
      problem(where + ": no laneSection");
      return;
    }
    for (const Node* sec : sections) {
      if (!attr_num(sec, "s")) problem(where + ": laneSection without s");
      const auto centers = children(sec, "center");
      if (centers.size() != 1 || children(centers[0], "lane").size() != 1 ||
          attr_int(children(centers[0], "lane")[0], "id") != 0) {
        problem(where + ": center must hold exactly lane 0");
      } else {
        check_marks(children(centers[0], "lane")[0], where);
      }
      for (const auto& [side, sign] : {std::pair{"left", 1}, std::pair{"right", -1}}) {
        std::vector<int> ids;
        for (const Node* group : children(sec, side)) {
          for (const Node* lane : children(group, "lane")) {
            const auto id = attr_int(lane, "id");
            if (!id || *id * sign <= 0) {
              problem(where + ": bad lane id on the " + side + " side");
              continue;
            }
            ids.push_back(*id * sign);
            info.lanes.insert(*id);
            if (children(lane, "width").empty()) problem(where + ": lane " + std::to_string(*id) + " has no width");
            for (const Node* w : children(lane, "width")) {
              for (const char* k : {"sOffset", "a", "b", "c", "d"}) {
                if (!attr_num(w, k)) problem(where + ": width missing " + k);
              }
            }
            check_marks(lane, where);
          }
        }
        std::sort(ids.begin(), ids.end());
        for (std::size_t i = 0; i < ids.size(); ++i) {
          if (ids[i] != static_cast<int>(i) + 1) {
            problem(where + ": " + side + " lane ids must be consecutive from 1");
            break;
          }
        }
      }
    }
  }

  void check_marks(const Node* lane, const std::string& where) {
    for (const Node* m : children(lane, "roadMark")) {
      if (kMarkTypes.count(attr(m, "type").value_or("")) == 0) problem(where + ": unknown roadMark type");
      if (kMarkColors.count(attr(m, "color").value_or("")) == 0) problem(where + ": unknown roadMark color");
    }
  }

  void read_junction(const Node* j) {
    const auto id = attr_int(j, "id");
    if (!id) {
      problem("junction without id");
      return;
    }
    if (junctions_.count(*id) != 0 || roads_.count(*id) != 0) {
      problem("junction " + std::to_string(*id) + ": duplicate id");
    }
    auto& conns = junctions_[*id];
    for (const Node* c : children(j, "connection")) {
      const auto in = attr_int(c, "incomingRoad");
      const auto conn = attr_int(c, "connectingRoad");
      const auto contact = attr(c, "contactPoint");
      if (!in || !conn || (contact != "start" && contact != "end")) {
        problem("junction " + std::to_string(*id) + ": malformed connection");
        continue;
      }
      std::vector<std::pair<int, int>> links;
      for (const Node* l : children(c, "laneLink")) {
        const auto from = attr_int(l, "from");
        const auto to = attr_int(l, "to");
        if (!from || !to) {
          problem("junction " + std::to_string(*id) + ": malformed laneLink");
          continue;
        }
        links.emplace_back(*from, *to);
      }
      conns.push_back({*in, *conn, links});
    }
    if (conns.empty()) problem("junction " + std::to_string(*id) + ": no connections");
  }

  // Position of a road at the given contact point.
  static Point2 contact_position(const RoadInfo& r, const std::string& contact) {
    return contact == "start" ? r.start : r.end;
  }

  void check_links() {
    for (const auto& [id, road] : roads_) {
      for (const auto& [which, link] : {std::pair{"predecessor", road.pred}, std::pair{"successor", road.succ}}) {
        if (!link) continue;
        const std::string where = "road " + std::to_string(id) + " " + which;
        if (link->type == "junction") {
          if (junctions_.count(link->id) == 0) problem(where + ": missing junction " + std::to_string(link->id));
          continue;
        }
        const auto it = roads_.find(link->id);
        if (it == roads_.end()) {
          problem(where + ": missing road " + std::to_string(link->id));
          continue;
        }
        const RoadInfo& other = it->second;
        const std::string own_contact = std::string(which) == "predecessor" ? "start" : "end";
        if (distance(contact_position(road, own_contact), contact_position(other, link->contact)) > 1e-2) {
          problem(where + ": linked ends are not coincident");
        }
        // The linked road must point back, or reach this road through its junction.
        const auto& back = link->contact == "start" ? other.pred : other.succ;
        const bool reciprocal = back && back->type == "road" && back->id == id;
        const bool via_junction = back && back->type == "junction" && back->id == road.junction &&
                                  road.junction != -1 && other.junction != road.junction;
        if (!reciprocal && !via_junction) problem(where + ": link to road " + std::to_string(other.id) + " is not reciprocal");
      }
    }
  }

  void check_connections() {
    for (const auto& [jid, conns] : junctions_) {
      for (const Conn& c : conns) {
        const std::string where = "junction " + std::to_string(jid);
        const auto in = roads_.find(c.incoming);
        const auto conn = roads_.find(c.connecting);
        if (in == roads_.end() || conn == roads_.end()) {
          problem(where + ": connection references a missing road");
          continue;
        }
        if (conn->second.junction != jid) problem(where + ": connecting road is not part of the junction");
        for (const auto& [from, to] : c.lane_links) {
          if (in->second.lanes.count(from) == 0 || conn->second.lanes.count(to) == 0) {
            problem(where + ": laneLink references a missing lane");
          }
        }
      }
    }
  }

  struct Conn {
    int incoming = 0;
    int connecting = 0;
    std::vector<std::pair<int, int>> lane_links;
  };

  std::map<int, RoadInfo> roads_;
  std::map<int, std::vector<Conn>> junctions_;
  std::vector<std::string> problems_;
};

}  // namespace

std::vector<std::string> validate_opendrive(std::string_view xml) { return Validator().run(xml); }

}  // namespace roadgen
