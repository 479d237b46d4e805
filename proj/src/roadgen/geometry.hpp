#pragma once

#include <span>
#include <vector>

namespace roadgen {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }

double dot(Point2 a, Point2 b);
double cross(Point2 a, Point2 b);
double norm(Point2 a);
double distance(Point2 a, Point2 b);
bool is_finite(Point2 p);

// Unit vector along `heading` (radians, counterclockwise from +x).
Point2 direction(double heading);
// Unit vector 90 degrees counterclockwise from `heading`.
Point2 left_normal(double heading);
// Maps any finite angle into [0, 2*pi).
double normalize_heading(double heading);
// Smallest signed difference a - b, in (-pi, pi].
double heading_difference(double a, double b);

struct Pose {
  Point2 position;
  double heading = 0.0;  // radians, [0, 2*pi)

  // Validates finiteness and normalizes the heading.
  static Pose make(Point2 position, double heading);

  friend bool operator==(const Pose&, const Pose&) = default;
};

// Rounds position and heading (in degrees) to 9 significant digits, the
// precision of scenario documents.
Pose canonical_pose(const Pose& pose);

// Translates `start` by `distance` meters along its heading.
Pose advance_pose(const Pose& start, double distance);

struct CubicBezier {
  Point2 p0;
  Point2 p1;
  Point2 p2;
  Point2 p3;

  // Throws ValidationError for non-finite control points or p0 == p3.
  static CubicBezier make(Point2 p0, Point2 p1, Point2 p2, Point2 p3);

  friend bool operator==(const CubicBezier&, const CubicBezier&) = default;
};

Point2 bezier_eval(const CubicBezier& curve, double t);
Point2 bezier_derivative(const CubicBezier& curve, double t);
Point2 bezier_second_derivative(const CubicBezier& curve, double t);
// samples + 1 points at uniform t, first = p0, last = p3.
std::vector<Point2> bezier_polyline(const CubicBezier& curve, int samples);
// Arc length by composite Gauss-Legendre quadrature.
double bezier_length(const CubicBezier& curve);
double bezier_curvature(const CubicBezier& curve, double t);

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool intersects(const BoundingBox& other, double margin = 0.0) const;
  void expand(Point2 p);
  void expand(const BoundingBox& other);
};

BoundingBox bounds_of(std::span<const Point2> points);

// Signed shoelace area; positive for counterclockwise rings.
double signed_area(std::span<const Point2> ring);
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);
// Even-odd test; boundary points count as inside.
bool point_in_polygon(std::span<const Point2> ring, Point2 p);

// A simple, counterclockwise polygon with positive area. The ring is closed
// implicitly (last vertex connects back to the first).
class Footprint {
 public:
  // Validates the ring. Throws ValidationError("footprint", ...) when it has
  // fewer than 3 vertices, non-finite coordinates, self-intersections, or
  // non-positive signed area (clockwise or degenerate).
  static Footprint from_polygon(std::vector<Point2> ring);

  // Union of overlapping or touching pieces, each a simple ring in either
  // orientation. Interior holes of the union are dropped.
  static Footprint union_of(std::span<const std::vector<Point2>> pieces);

  const std::vector<Point2>& polygon() const noexcept { return ring_; }
  const BoundingBox& bounds() const noexcept { return bounds_; }
  double area() const;
  bool contains(Point2 p) const;

  friend bool operator==(const Footprint& a, const Footprint& b) { return a.ring_ == b.ring_; }

 private:
  Footprint() = default;

  std::vector<Point2> ring_;
  BoundingBox bounds_;
};

// True iff the interiors of `a` and `b`, each shrunk inward by `tolerance`,
// intersect. Boundary contact within the tolerance is not overlap.
bool footprints_overlap(const Footprint& a, const Footprint& b, double tolerance);

}  // namespace roadgen
