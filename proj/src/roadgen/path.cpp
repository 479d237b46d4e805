#include "roadgen/path.hpp"

#include <algorithm>
#include <cmath>

#include "roadgen/errors.hpp"
#include "roadgen/numeric.hpp"

namespace roadgen {

PathSegment PathSegment::line(const Pose& start, double length) {
  PathSegment seg;
  seg.type = SegmentType::Line;
  seg.start = start;
  seg.length = length;
  return seg;
}

PathSegment PathSegment::arc(const Pose& start, double length, double curvature) {
  PathSegment seg;
  seg.type = SegmentType::Arc;
  seg.start = start;
  seg.length = length;
  seg.curvature = curvature;
  return seg;
}

PathSegment PathSegment::curve(const CubicBezier& bezier) {
  PathSegment seg;
  seg.type = SegmentType::Bezier;
  seg.bezier = bezier;
  const Point2 d0 = bezier_derivative(bezier, 0.0);
  seg.start = Pose::make(bezier.p0, std::atan2(d0.y, d0.x));
  seg.length = bezier_length(bezier);
  return seg;
}

namespace {

Pose arc_pose(const Pose& start, double curvature, double s) {
  if (curvature == 0.0) return advance_pose(start, s);
  const double radius = 1.0 / curvature;
  const Point2 center = start.position + radius * left_normal(start.heading);
  const double heading = start.heading + s * curvature;
  return Pose::make(center - radius * left_normal(heading), heading);
}

Pose bezier_pose(const CubicBezier& c, double t) {
  const Point2 d = bezier_derivative(c, t);
  return Pose::make(bezier_eval(c, t), std::atan2(d.y, d.x));
}

}  // namespace

Pose PathSegment::end_pose() const {
  switch (type) {
    case SegmentType::Line:
      return advance_pose(start, length);
    case SegmentType::Arc:
      return arc_pose(start, curvature, length);
    case SegmentType::Bezier:
      return bezier_pose(bezier, 1.0);
  }
  return start;
}

ReferencePath::ReferencePath(std::vector<PathSegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw PreconditionError("ReferencePath: no segments");
  for (const PathSegment& seg : segments_) {
    if (!(seg.length > 0.0) || !std::isfinite(seg.length)) {
      throw InstantiationError("reference path segment must have positive finite length");
    }
    length_ += seg.length;
  }
}

Pose ReferencePath::start_pose() const { return segments_.front().start; }
Pose ReferencePath::end_pose() const { return segments_.back().end_pose(); }

std::vector<PathSample> ReferencePath::sample(int curved_samples) const {
  std::vector<PathSample> out;
  double s0 = 0.0;
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const PathSegment& seg = segments_[k];
    const int n = seg.type == SegmentType::Line ? 1 : curved_samples;
    // Bezier samples are uniform in t; s is reparameterized by chord length.
    std::vector<PathSample> local;
    local.reserve(static_cast<std::size_t>(n) + 1);
    double chord = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double f = static_cast<double>(i) / n;
      Pose p;
      switch (seg.type) {
        case SegmentType::Line: p = advance_pose(seg.start, f * seg.length); break;
        case SegmentType::Arc: p = arc_pose(seg.start, seg.curvature, f * seg.length); break;
        case SegmentType::Bezier: p = bezier_pose(seg.bezier, f); break;
      }
      if (!local.empty()) chord += distance(local.back().position, p.position);
      local.push_back({p.position, p.heading, chord});
    }
    const double scale = (seg.type == SegmentType::Bezier && chord > 0.0) ? seg.length / chord : 1.0;
    for (std::size_t i = (k == 0 ? 0 : 1); i < local.size(); ++i) {
      PathSample ps = local[i];
      ps.s = s0 + (seg.type == SegmentType::Bezier ? ps.s * scale : static_cast<double>(i) / n * seg.length);
      out.push_back(ps);
    }
    s0 += seg.length;
  }
  return out;
}

double ReferencePath::max_abs_curvature() const {
  double best = 0.0;
  for (const PathSegment& seg : segments_) {
    if (seg.type == SegmentType::Arc) best = std::max(best, std::abs(seg.curvature));
    if (seg.type == SegmentType::Bezier) {
      for (int i = 0; i <= 64; ++i) {
        best = std::max(best, std::abs(bezier_curvature(seg.bezier, i / 64.0)));
      }
    }
  }
  return best;
}

CubicBezier bridge_curve(const Pose& from, const Pose& to) {
  const double chord = distance(from.position, to.position);
  const double turn = std::abs(heading_difference(to.heading, from.heading));
  double handle = chord / 3.0;
  if (turn > 1e-6) {
    const double radius = chord / (2.0 * std::sin(turn / 2.0));
    handle = 4.0 / 3.0 * std::tan(turn / 4.0) * radius;
  }
  return CubicBezier::make(from.position, from.position + handle * direction(from.heading),
                           to.position - handle * direction(to.heading), to.position);
}

}  // namespace roadgen
