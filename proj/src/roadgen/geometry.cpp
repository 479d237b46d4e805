#include "roadgen/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "roadgen/errors.hpp"
#include "roadgen/numeric.hpp"

namespace roadgen {

namespace bg = boost::geometry;

namespace {

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, /*ClockWise=*/false, /*Closed=*/false>;
using BgMultiPolygon = bg::model::multi_polygon<BgPolygon>;

// Area below which a clipped region is treated as pure boundary contact.
constexpr double kContactArea = 1e-9;

BgPolygon to_bg(std::span<const Point2> ring) {
  BgPolygon poly;
  poly.outer().reserve(ring.size());
  for (const Point2& p : ring) poly.outer().emplace_back(p.x, p.y);
  return poly;
}

std::vector<Point2> from_bg(const BgPolygon::ring_type& ring) {
  std::vector<Point2> out;
  out.reserve(ring.size());
  for (const BgPoint& p : ring) {
    const Point2 q{p.x(), p.y()};
    if (!out.empty() && distance(out.back(), q) < 1e-9) continue;
    out.push_back(q);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) < 1e-9) out.pop_back();
  return out;
}

// Near-collinear triples count as collinear.
int orientation(Point2 a, Point2 b, Point2 c) {
  const double v = cross(b - a, c - a);
  const double eps = 1e-12 * norm(b - a) * norm(c - a);
  return (v > eps) - (v < -eps);
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

bool ring_is_simple(std::span<const Point2> ring) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = ring[i];
    const Point2 b = ring[(i + 1) % n];
    if (a == b) return false;
    // Adjacent edge folding back onto this one is a spike.
    const Point2 c = ring[(i + 2) % n];
    if (cross(b - a, c - b) == 0.0 && dot(b - a, c - b) < 0.0) return false;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // shares vertex 0
      if (segments_intersect(a, b, ring[j], ring[(j + 1) % n])) return false;
    }
  }
  return true;
}

}  // namespace

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a) { return std::hypot(a.x, a.y); }
double distance(Point2 a, Point2 b) { return norm(a - b); }
bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Point2 direction(double heading) { return {std::cos(heading), std::sin(heading)}; }
Point2 left_normal(double heading) { return {-std::sin(heading), std::cos(heading)}; }

double normalize_heading(double heading) {
  double h = std::fmod(heading, kTwoPi);
  if (h < 0.0) h += kTwoPi;
  if (h >= kTwoPi) h = 0.0;
  return h;
}

double heading_difference(double a, double b) {
  double d = std::fmod(a - b, kTwoPi);
  if (d <= -kPi) d += kTwoPi;
  if (d > kPi) d -= kTwoPi;
  return d;
}

Pose Pose::make(Point2 position, double heading) {
  if (!is_finite(position) || !std::isfinite(heading)) {
    throw ValidationError("pose", "non-finite position or heading");
  }
  return Pose{position, normalize_heading(heading)};
}

Pose canonical_pose(const Pose& pose) {
  const Point2 position{canonical_real(pose.position.x), canonical_real(pose.position.y)};
  return Pose::make(position, deg_to_rad(canonical_real(rad_to_deg(pose.heading))));
}

Pose advance_pose(const Pose& start, double distance) {
  if (!(distance >= 0.0)) throw PreconditionError("advance_pose: distance must be >= 0");
  return Pose{start.position + distance * direction(start.heading), start.heading};
}

CubicBezier CubicBezier::make(Point2 p0, Point2 p1, Point2 p2, Point2 p3) {
  if (!is_finite(p0) || !is_finite(p1) || !is_finite(p2) || !is_finite(p3)) {
    throw ValidationError("bezier", "control points must be finite");
  }
  if (p0 == p3) throw ValidationError("bezier", "degenerate curve: p0 == p3");
  return CubicBezier{p0, p1, p2, p3};
}

Point2 bezier_eval(const CubicBezier& c, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("bezier_eval: t outside [0, 1]");
  if (t == 0.0) return c.p0;
  if (t == 1.0) return c.p3;
  const double u = 1.0 - t;
  const double b0 = u * u * u;
  const double b1 = 3.0 * u * u * t;
  const double b2 = 3.0 * u * t * t;
  const double b3 = t * t * t;
  return {b0 * c.p0.x + b1 * c.p1.x + b2 * c.p2.x + b3 * c.p3.x,
          b0 * c.p0.y + b1 * c.p1.y + b2 * c.p2.y + b3 * c.p3.y};
}

Point2 bezier_derivative(const CubicBezier& c, double t) {
  const double u = 1.0 - t;
  return 3.0 * u * u * (c.p1 - c.p0) + 6.0 * u * t * (c.p2 - c.p1) + 3.0 * t * t * (c.p3 - c.p2);
}

Point2 bezier_second_derivative(const CubicBezier& c, double t) {
  const double u = 1.0 - t;
  return 6.0 * u * (c.p2 - 2.0 * c.p1 + c.p0) + 6.0 * t * (c.p3 - 2.0 * c.p2 + c.p1);
}

std::vector<Point2> bezier_polyline(const CubicBezier& curve, int samples) {
  if (samples < 2) throw PreconditionError("bezier_polyline: samples must be >= 2");
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(samples) + 1);
  for (int i = 0; i <= samples; ++i) {
    out.push_back(bezier_eval(curve, static_cast<double>(i) / samples));
  }
  return out;
}

double bezier_length(const CubicBezier& curve) {
  // 5-point Gauss-Legendre on 32 panels.
  static constexpr std::array<double, 5> kNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                                   0.5384693101056831, 0.9061798459386640};
  static constexpr std::array<double, 5> kWeights = {0.2369268850561891, 0.4786286704993665,
                                                     0.5688888888888889, 0.4786286704993665,
                                                     0.2369268850561891};
  constexpr int kPanels = 32;
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double a = static_cast<double>(k) / kPanels;
    const double half = 0.5 / kPanels;
    const double mid = a + half;
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
      total += kWeights[i] * half * norm(bezier_derivative(curve, mid + half * kNodes[i]));
    }
  }
  return total;
}

double bezier_curvature(const CubicBezier& curve, double t) {
  const Point2 d1 = bezier_derivative(curve, t);
  const Point2 d2 = bezier_second_derivative(curve, t);
  const double speed = norm(d1);
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  return cross(d1, d2) / (speed * speed * speed);
}

bool BoundingBox::intersects(const BoundingBox& o, double margin) const {
  return min_x - margin <= o.max_x && o.min_x - margin <= max_x &&
         min_y - margin <= o.max_y && o.min_y - margin <= max_y;
}

void BoundingBox::expand(Point2 p) {
  min_x = std::min(min_x, p.x);
  min_y = std::min(min_y, p.y);
  max_x = std::max(max_x, p.x);
  max_y = std::max(max_y, p.y);
}

void BoundingBox::expand(const BoundingBox& o) {
  expand(Point2{o.min_x, o.min_y});
  expand(Point2{o.max_x, o.max_y});
}

BoundingBox bounds_of(std::span<const Point2> points) {
  if (points.empty()) return {};
  BoundingBox box{points[0].x, points[0].y, points[0].x, points[0].y};
  for (const Point2& p : points) box.expand(p);
  return box;
}

double signed_area(std::span<const Point2> ring) {
  double twice = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross(ring[i], ring[(i + 1) % n]);
  return 0.5 * twice;
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool point_in_polygon(std::span<const Point2> ring, Point2 p) {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = ring[i];
    const Point2 b = ring[j];
    if (point_segment_distance(p, a, b) <= 1e-9) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

Footprint Footprint::from_polygon(std::vector<Point2> ring) {
  if (ring.size() < 3) throw ValidationError("footprint", "polygon needs at least 3 vertices");
  for (const Point2& p : ring) {
    if (!is_finite(p)) throw ValidationError("footprint", "non-finite vertex");
  }
  if (!ring_is_simple(ring)) throw ValidationError("footprint", "polygon is not simple");
  if (!(signed_area(ring) > 0.0)) {
    throw ValidationError("footprint", "polygon must be counterclockwise with positive area");
  }
  Footprint fp;
  fp.bounds_ = bounds_of(ring);
  fp.ring_ = std::move(ring);
  return fp;
}

Footprint Footprint::union_of(std::span<const std::vector<Point2>> pieces) {
  if (pieces.empty()) throw ValidationError("footprint", "no pieces to union");
  BgMultiPolygon acc;
  for (const auto& piece : pieces) {
    BgPolygon poly = to_bg(piece);
    bg::correct(poly);
    BgMultiPolygon next;
    if (acc.empty()) {
      next.push_back(std::move(poly));
    } else {
      bg::union_(acc, poly, next);
    }
    acc = std::move(next);
  }
  const BgPolygon* largest = nullptr;
  double largest_area = 0.0;
  for (const BgPolygon& p : acc) {
    const double a = bg::area(p);
    if (a > largest_area) {
      largest_area = a;
      largest = &p;
    }
  }
  if (largest == nullptr) throw ValidationError("footprint", "union has no area");
  for (const BgPolygon& p : acc) {
    if (&p != largest && bg::area(p) > kContactArea) {
      throw ValidationError("footprint", "pieces do not form a connected region");
    }
  }
  return from_polygon(from_bg(largest->outer()));
}

double Footprint::area() const { return signed_area(ring_); }

bool Footprint::contains(Point2 p) const { return point_in_polygon(ring_, p); }

bool footprints_overlap(const Footprint& a, const Footprint& b, double tolerance) {
  if (!(tolerance >= 0.0)) throw PreconditionError("footprints_overlap: tolerance must be >= 0");
  if (!a.bounds().intersects(b.bounds(), -2.0 * tolerance)) return false;

  // Erosion distributes over intersection, so shrinking the clipped region
  // equals intersecting the two shrunk footprints.
  const BgPolygon pa = to_bg(a.polygon());
  const BgPolygon pb = to_bg(b.polygon());
  BgMultiPolygon clipped;
  bg::intersection(pa, pb, clipped);
  for (const BgPolygon& piece : clipped) {
    if (bg::area(piece) <= kContactArea) continue;
    if (tolerance == 0.0) return true;
    BgMultiPolygon eroded;
    bg::strategy::buffer::distance_symmetric<double> dist(-tolerance);
    bg::strategy::buffer::side_straight side;
    bg::strategy::buffer::join_round join(16);
    bg::strategy::buffer::end_flat end;
    bg::strategy::buffer::point_square point;
    bg::buffer(piece, eroded, dist, side, join, end, point);
    if (bg::area(eroded) > kContactArea) return true;
  }
  return false;
}

}  // namespace roadgen
