#pragma once

#include <vector>

#include "roadgen/geometry.hpp"

namespace roadgen {

enum class SegmentType { Line, Arc, Bezier };

// One planView primitive of a road reference line.
struct PathSegment {
  SegmentType type = SegmentType::Line;
  Pose start;
  double length = 0.0;
  double curvature = 0.0;  // Arc only; positive turns left
  CubicBezier bezier{};    // Bezier only, world coordinates

  static PathSegment line(const Pose& start, double length);
  static PathSegment arc(const Pose& start, double length, double curvature);
  static PathSegment curve(const CubicBezier& bezier);

  Pose end_pose() const;

  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

struct PathSample {
  Point2 position;
  double heading = 0.0;
  double s = 0.0;  // distance along the path
};

// Reference line built from consecutive segments.
class ReferencePath {
 public:
  ReferencePath() = default;
  explicit ReferencePath(std::vector<PathSegment> segments);

  const std::vector<PathSegment>& segments() const noexcept { return segments_; }
  double length() const noexcept { return length_; }
  Pose start_pose() const;
  Pose end_pose() const;

  // Samples every segment; curved segments get `curved_samples` intervals,
  // lines get one. Shared joints appear once.
  std::vector<PathSample> sample(int curved_samples) const;

  // Largest |curvature| over the path (sampled for Bezier segments).
  double max_abs_curvature() const;

  friend bool operator==(const ReferencePath&, const ReferencePath&) = default;

 private:
  std::vector<PathSegment> segments_;
  double length_ = 0.0;
};

// Cubic Bezier leaving `from` along its heading and arriving at `to` along
// its heading; handle lengths approximate a circular arc for the turn.
CubicBezier bridge_curve(const Pose& from, const Pose& to);

}  // namespace roadgen
