#include <algorithm>
#include <set>
#include <sstream>

#include "roadgen/errors.hpp"
#include "roadgen/export.hpp"

namespace roadgen {

namespace {

constexpr const char* kAsphalt = "#4a4a4a";
constexpr const char* kWhite = "#ffffff";
constexpr const char* kYellow = "#f2c200";

struct StrokeStyle {
  const char* color;
  bool dashed;
  bool doubled;
};

StrokeStyle stroke_for(LaneMarking m) {
  switch (m) {
    case LaneMarking::WhiteDashed: return {kWhite, true, false};
    case LaneMarking::WhiteSolid: return {kWhite, false, false};
    case LaneMarking::WhiteDoubleSolid: return {kWhite, false, true};
    case LaneMarking::YellowDashed: return {kYellow, true, false};
    case LaneMarking::YellowSolid: return {kYellow, false, false};
    case LaneMarking::YellowDoubleSolid: return {kYellow, false, true};
    case LaneMarking::YellowDashedSolid: return {kYellow, true, true};
  }
  return {kWhite, false, false};
}

class SvgWriter {
 public:
  SvgWriter(const RoadScenario& s, double scale) : s_(s), scale_(scale) {
    box_ = s.instances.front().footprint.bounds();
    for (const ComponentInstance& inst : s.instances) box_.expand(inst.footprint.bounds());
    margin_x_ = 0.05 * (box_.max_x - box_.min_x);
    margin_y_ = 0.05 * (box_.max_y - box_.min_y);
  }

  std::string write() {
    const double w = (box_.max_x - box_.min_x + 2 * margin_x_) * scale_;
    const double h = (box_.max_y - box_.min_y + 2 * margin_y_) * scale_;
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
    out_ << "  <rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"#eef1e6\"/>\n";

    out_ << "  <g id=\"footprints\">\n";
    for (const ComponentInstance& inst : s_.instances) {
      out_ << "    <polygon class=\"footprint\" data-instance=\"" << inst.id << "\" points=\""
           << points(inst.footprint.polygon()) << "\" fill=\"" << kAsphalt << "\" stroke=\"none\"/>\n";
    }
    out_ << "  </g>\n";

    out_ << "  <g id=\"boundaries\" fill=\"none\" stroke-linejoin=\"round\">\n";
    for (const ComponentInstance& inst : s_.instances) {
      for (const Polyline& b : inst.boundaries) boundary(inst.id, b);
    }
    out_ << "  </g>\n";

    out_ << "  <g id=\"centerlines\" fill=\"none\" stroke=\"#6fb7ff\" stroke-width=\"" << num(0.1 * scale_)
         << "\" stroke-dasharray=\"" << num(0.5 * scale_) << " " << num(0.5 * scale_) << "\">\n";
    for (const ComponentInstance& inst : s_.instances) {
      for (const Polyline& c : inst.centerlines) {
        out_ << "    <polyline class=\"centerline\" data-instance=\"" << inst.id << "\" data-lane=\"" << c.lane_id
             << "\" points=\"" << points(c.points) << "\"/>\n";
      }
    }
    out_ << "  </g>\n";

    std::set<std::pair<int, int>> connected;
    for (const Connection& c : s_.connections) connected.insert({c.from.instance, c.from.endpoint});
    out_ << "  <g id=\"endpoints\" font-family=\"sans-serif\" font-size=\"" << num(2.0 * scale_) << "\">\n";
    for (const ComponentInstance& inst : s_.instances) {
      for (const Endpoint& e : inst.endpoints) {
        const bool used = connected.count({inst.id, e.index}) != 0;
        const Point2 p = map(e.pose.position);
        const Point2 tip = map(e.pose.position + 3.0 * direction(e.pose.heading));
        out_ << "    <g class=\"endpoint\" data-instance=\"" << inst.id << "\" data-endpoint=\"" << e.index << "\">\n"
             << "      <circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"" << num(0.8 * scale_)
             << "\" fill=\"" << (used ? "#2e9d4f" : "#d93a3a") << "\"/>\n"
             << "      <line x1=\"" << num(p.x) << "\" y1=\"" << num(p.y) << "\" x2=\"" << num(tip.x) << "\" y2=\""
             << num(tip.y) << "\" stroke=\"#222222\" stroke-width=\"" << num(0.2 * scale_) << "\"/>\n"
             << "      <text x=\"" << num(p.x + 1.2 * scale_) << "\" y=\"" << num(p.y - 1.2 * scale_) << "\">c"
             << inst.id << ".e" << e.index << " " << to_string(e.signature) << "</text>\n"
             << "    </g>\n";
      }
    }
    out_ << "  </g>\n</svg>\n";
    return out_.str();
  }

 private:
  static std::string num(double v) { return format_real(v == 0.0 ? 0.0 : v, 9); }

  Point2 map(Point2 p) const {
    return {(p.x - box_.min_x + margin_x_) * scale_, (box_.max_y - p.y + margin_y_) * scale_};
  }

  std::string points(const std::vector<Point2>& pts) const {
    std::string out;
    for (const Point2& p : pts) {
      const Point2 q = map(p);
      if (!out.empty()) out += ' ';
      out += num(q.x) + "," + num(q.y);
    }
    return out;
  }

  void boundary(int instance, const Polyline& b) {
    const StrokeStyle st = stroke_for(b.marking);
    const double width = (st.doubled ? 0.45 : 0.15) * scale_;
    out_ << "    <polyline class=\"boundary\" data-instance=\"" << instance << "\" data-lane=\"" << b.lane_id
         << "\" data-marking=\"" << marking_name(b.marking) << "\" points=\"" << points(b.points) << "\" stroke=\""
         << st.color << "\" stroke-width=\"" << num(width) << "\"";
    if (st.dashed && !st.doubled) out_ << " stroke-dasharray=\"" << num(3.0 * scale_) << " " << num(3.0 * scale_) << "\"";
    out_ << "/>\n";
    if (st.doubled) {
      // Asphalt stroke down the middle of the wide stroke.
      out_ << "    <polyline class=\"boundary-overlay\" points=\"" << points(b.points) << "\" stroke=\"" << kAsphalt
           << "\" stroke-width=\"" << num(0.15 * scale_) << "\"";
      if (st.dashed) out_ << " stroke-dasharray=\"" << num(3.0 * scale_) << " " << num(3.0 * scale_) << "\"";
      out_ << "/>\n";
    }
  }

  const RoadScenario& s_;
  double scale_;
  BoundingBox box_;
  double margin_x_ = 0.0;
  double margin_y_ = 0.0;
  std::ostringstream out_;
};

}  // namespace

std::string to_svg(const RoadScenario& scenario, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw PreconditionError("to_svg: scale must be positive");
  if (scenario.instances.empty()) throw PreconditionError("to_svg: empty scenario");
  return SvgWriter(scenario, scale).write();
}

}  // namespace roadgen
