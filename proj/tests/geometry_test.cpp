#include <gtest/gtest.h>

#include <cmath>

#include "roadgen/errors.hpp"
#include "roadgen/geometry.hpp"
#include "roadgen/path.hpp"
#include "support.hpp"

using namespace roadgen;
using rgtest::Gen;

namespace {

double chord_sum(const std::vector<Point2>& pts) {
  double s = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) s += distance(pts[i - 1], pts[i]);
  return s;
}

}  // namespace

TEST(Bezier, MidpointOfArchCurve) {
  const CubicBezier c = CubicBezier::make({0, 0}, {0, 1}, {1, 1}, {1, 0});
  const Point2 m = bezier_eval(c, 0.5);
  EXPECT_NEAR(m.x, 0.5, 1e-12);
  EXPECT_NEAR(m.y, 0.75, 1e-12);
}

TEST(Bezier, RejectsDegenerateAndNonFinite) {
  EXPECT_THROW(CubicBezier::make({1, 1}, {2, 2}, {3, 3}, {1, 1}), ValidationError);
  EXPECT_THROW(CubicBezier::make({0, 0}, {NAN, 0}, {1, 1}, {2, 2}), ValidationError);
}

TEST(Bezier, EvalRejectsOutOfRangeParameter) {
  const CubicBezier c = CubicBezier::make({0, 0}, {0, 1}, {1, 1}, {1, 0});
  EXPECT_THROW(bezier_eval(c, -0.01), PreconditionError);
  EXPECT_THROW(bezier_eval(c, 1.01), PreconditionError);
}

TEST(BezierProperty, EndpointIdentities) {
  Gen g(11);
  for (int i = 0; i < 10000; ++i) {
    const CubicBezier c = g.curve(1000.0);
    const Point2 a = bezier_eval(c, 0.0);
    const Point2 b = bezier_eval(c, 1.0);
    ASSERT_NEAR(a.x, c.p0.x, 1e-12);
    ASSERT_NEAR(a.y, c.p0.y, 1e-12);
    ASSERT_NEAR(b.x, c.p3.x, 1e-12);
    ASSERT_NEAR(b.y, c.p3.y, 1e-12);
  }
}

TEST(BezierProperty, StaysInsideControlHull) {
  Gen g(12);
  for (int i = 0; i < 10000; ++i) {
    const CubicBezier c = g.curve();
    const double t = g.real(0.0, 1.0);
    ASSERT_TRUE(rgtest::in_convex_hull({c.p0, c.p1, c.p2, c.p3}, bezier_eval(c, t), 1e-9)) << "curve " << i;
  }
}

TEST(BezierPolyline, TwoSamplesAreEndsAndMidpoint) {
  const CubicBezier c = CubicBezier::make({0, 0}, {0, 1}, {1, 1}, {1, 0});
  const std::vector<Point2> pts = bezier_polyline(c, 2);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0], c.p0);
  EXPECT_EQ(pts[2], c.p3);
  EXPECT_NEAR(pts[1].x, 0.5, 1e-12);
  EXPECT_NEAR(pts[1].y, 0.75, 1e-12);
}

TEST(BezierPolyline, CollinearControlsGiveCollinearPoints) {
  const CubicBezier c = CubicBezier::make({0, 0}, {1, 2}, {2, 4}, {3, 6});
  const std::vector<Point2> pts = bezier_polyline(c, 4);
  ASSERT_EQ(pts.size(), 5u);
  for (const Point2& p : pts) EXPECT_NEAR(cross(p, Point2{1, 2}), 0.0, 1e-12);
}

TEST(BezierPolyline, RejectsTooFewSamples) {
  const CubicBezier c = CubicBezier::make({0, 0}, {0, 1}, {1, 1}, {1, 0});
  EXPECT_THROW(bezier_polyline(c, 1), PreconditionError);
}

TEST(BezierPolyline, QuarterLoopMatchesDenseSampling) {
  const double k = 4.0 / 3.0 * (std::sqrt(2.0) - 1.0) * 10.0;
  const CubicBezier c = CubicBezier::make({10, 0}, {10, k}, {k, 10}, {0, 10});
  const double coarse = chord_sum(bezier_polyline(c, 64));
  const double dense = chord_sum(bezier_polyline(c, 4096));
  EXPECT_LT(std::abs(coarse - dense) / dense, 1e-3);
}

TEST(BezierProperty, LengthAgreesWithDenseSampling) {
  Gen g(13);
  for (int i = 0; i < 200; ++i) {
    const CubicBezier c = g.curve();
    const double dense = chord_sum(bezier_polyline(c, 20000));
    EXPECT_NEAR(bezier_length(c), dense, 1e-4 * dense + 1e-6);
  }
}

TEST(Pose, AdvanceExamples) {
  const Pose a = advance_pose(Pose::make({0, 0}, 0.0), 50.0);
  EXPECT_NEAR(a.position.x, 50.0, 1e-12);
  EXPECT_NEAR(a.position.y, 0.0, 1e-12);
  EXPECT_EQ(a.heading, 0.0);

  const Pose b = advance_pose(Pose::make({0, 0}, kPi / 2), 50.0);
  EXPECT_NEAR(b.position.x, 0.0, 1e-12);
  EXPECT_NEAR(b.position.y, 50.0, 1e-12);
  EXPECT_NEAR(b.heading, kPi / 2, 1e-15);

  const Pose c = advance_pose(Pose::make({3, 4}, kPi), 10.0);
  EXPECT_NEAR(c.position.x, -7.0, 1e-12);
  EXPECT_NEAR(c.position.y, 4.0, 1e-12);
  EXPECT_NEAR(c.heading, kPi, 1e-15);
}

TEST(Pose, NegativeAdvanceIsRejected) {
  EXPECT_THROW(advance_pose(Pose::make({0, 0}, 0.0), -1.0), PreconditionError);
}

TEST(Pose, HeadingIsNormalized) {
  EXPECT_NEAR(Pose::make({0, 0}, -kPi / 2).heading, 3 * kPi / 2, 1e-12);
  EXPECT_NEAR(Pose::make({0, 0}, 5 * kPi).heading, kPi, 1e-12);
  EXPECT_THROW(Pose::make({NAN, 0}, 0.0), ValidationError);
}

TEST(PoseProperty, AdvanceIsAdditive) {
  Gen g(14);
  for (int i = 0; i < 10000; ++i) {
    const Pose p = g.pose();
    const double d1 = g.real(0, 200);
    const double d2 = g.real(0, 200);
    const Pose two = advance_pose(advance_pose(p, d1), d2);
    const Pose one = advance_pose(p, d1 + d2);
    ASSERT_NEAR(two.position.x, one.position.x, 1e-9);
    ASSERT_NEAR(two.position.y, one.position.y, 1e-9);
    ASSERT_EQ(two.heading, one.heading);
  }
}

TEST(Footprint, ValidatesRing) {
  EXPECT_THROW(Footprint::from_polygon({{0, 0}, {1, 0}}), ValidationError);
  EXPECT_THROW(Footprint::from_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), ValidationError);  // clockwise
  EXPECT_THROW(Footprint::from_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), ValidationError);  // bow tie
  EXPECT_THROW(Footprint::from_polygon({{0, 0}, {1, 0}, {2, 0}}), ValidationError);          // zero area
  const Footprint f = Footprint::from_polygon(rgtest::square(0, 0, 2));
  EXPECT_DOUBLE_EQ(f.area(), 4.0);
  EXPECT_TRUE(f.contains({1, 1}));
  EXPECT_FALSE(f.contains({3, 1}));
}

TEST(Footprint, OverlapExamples) {
  const Footprint a = Footprint::from_polygon(rgtest::square(0, 0));
  EXPECT_FALSE(footprints_overlap(a, Footprint::from_polygon(rgtest::square(10, 10)), 0.01));
  EXPECT_TRUE(footprints_overlap(a, Footprint::from_polygon(rgtest::square(0.5, 0.5)), 0.01));
  EXPECT_FALSE(footprints_overlap(a, Footprint::from_polygon(rgtest::square(1.0, 0)), 0.01));
}

TEST(Footprint, OverlapWithinToleranceIsContact) {
  const Footprint a = Footprint::from_polygon(rgtest::square(0, 0));
  const Footprint b = Footprint::from_polygon(rgtest::square(0.99, 0));
  EXPECT_FALSE(footprints_overlap(a, b, 0.05));
  EXPECT_TRUE(footprints_overlap(a, b, 0.0));
  EXPECT_THROW(footprints_overlap(a, b, -1.0), PreconditionError);
}

TEST(FootprintProperty, OverlapIsSymmetric) {
  Gen g(15);
  for (int i = 0; i < 2000; ++i) {
    const Footprint a = Footprint::from_polygon(rgtest::square(g.real(-3, 3), g.real(-3, 3), g.real(0.5, 3)));
    const Footprint b = Footprint::from_polygon(rgtest::square(g.real(-3, 3), g.real(-3, 3), g.real(0.5, 3)));
    const double tol = g.real(0.0, 0.2);
    ASSERT_EQ(footprints_overlap(a, b, tol), footprints_overlap(b, a, tol));
  }
}

TEST(FootprintProperty, AxisAlignedSquaresMatchIntervalOracle) {
  Gen g(16);
  for (int i = 0; i < 2000; ++i) {
    const double ax = g.real(-3, 3), ay = g.real(-3, 3), as = g.real(0.5, 3);
    const double bx = g.real(-3, 3), by = g.real(-3, 3), bs = g.real(0.5, 3);
    const double tol = 0.05;
    const double ox = std::min(ax + as - tol, bx + bs - tol) - std::max(ax + tol, bx + tol);
    const double oy = std::min(ay + as - tol, by + bs - tol) - std::max(ay + tol, by + tol);
    if (std::abs(ox) < 1e-6 || std::abs(oy) < 1e-6) continue;
    const bool expected = ox > 0 && oy > 0;
    ASSERT_EQ(footprints_overlap(Footprint::from_polygon(rgtest::square(ax, ay, as)),
                                 Footprint::from_polygon(rgtest::square(bx, by, bs)), tol),
              expected);
  }
}

TEST(Path, ArcEndPose) {
  const PathSegment s = PathSegment::arc(Pose::make({0, 0}, 0.0), kPi * 10.0 / 2.0, 0.1);
  const Pose e = s.end_pose();
  EXPECT_NEAR(e.position.x, 10.0, 1e-9);
  EXPECT_NEAR(e.position.y, 10.0, 1e-9);
  EXPECT_NEAR(e.heading, kPi / 2, 1e-12);
}

TEST(PathProperty, BridgeCurveMatchesPoses) {
  Gen g(17);
  for (int i = 0; i < 1000; ++i) {
    const Pose from = g.pose(50);
    const Pose to = g.pose(50);
    if (distance(from.position, to.position) < 1.0) continue;
    const CubicBezier c = bridge_curve(from, to);
    ASSERT_EQ(c.p0, from.position);
    ASSERT_EQ(c.p3, to.position);
    const Point2 d0 = bezier_derivative(c, 0.0);
    const Point2 d1 = bezier_derivative(c, 1.0);
    ASSERT_NEAR(heading_difference(std::atan2(d0.y, d0.x), from.heading), 0.0, 1e-9);
    ASSERT_NEAR(heading_difference(std::atan2(d1.y, d1.x), to.heading), 0.0, 1e-9);
  }
}
