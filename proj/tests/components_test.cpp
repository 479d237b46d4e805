#include <gtest/gtest.h>

#include <map>

#include "roadgen/catalog.hpp"
#include "roadgen/components.hpp"
#include "roadgen/constraints.hpp"
#include "roadgen/errors.hpp"
#include "roadgen/generation.hpp"
#include "support.hpp"

using namespace roadgen;
using rgtest::find_template;
using rgtest::params_at;

namespace {

const std::vector<ComponentTemplate>& catalog() {
  static const std::vector<ComponentTemplate> c = default_catalog();
  return c;
}

const InterfaceSignature kTwoBidiSolid{2, LaneMarking::WhiteSolid, true};

}  // namespace

TEST(EndpointCount, PerKind) {
  EXPECT_EQ(endpoint_count(ComponentKind::Straight), 1);
  EXPECT_EQ(endpoint_count(ComponentKind::Curve), 1);
  EXPECT_EQ(endpoint_count(ComponentKind::LaneSwitch), 1);
  EXPECT_EQ(endpoint_count(ComponentKind::UTurn), 1);
  EXPECT_EQ(endpoint_count(ComponentKind::Fork), 2);
  EXPECT_EQ(endpoint_count(ComponentKind::TIntersection), 2);
  EXPECT_EQ(endpoint_count(ComponentKind::Intersection), 3);
  EXPECT_EQ(endpoint_count(ComponentKind::Roundabout), 3);
}

TEST(Names, RoundTrip) {
  for (ComponentKind k : kAllKinds) EXPECT_EQ(parse_kind(kind_name(k)), k);
  for (LaneMarking m : kAllMarkings) EXPECT_EQ(parse_marking(marking_name(m)), m);
  EXPECT_FALSE(parse_kind("Bridge").has_value());
  EXPECT_FALSE(parse_marking("RedSolid").has_value());
}

TEST(Template, RejectsUnrealizableCombinations) {
  EXPECT_THROW(make_template(0, ComponentKind::Straight, Variant::None, {7, LaneMarking::WhiteSolid, false}),
               ValidationError);
  EXPECT_THROW(make_template(0, ComponentKind::Straight, Variant::None, {0, LaneMarking::WhiteSolid, false}),
               ValidationError);
  EXPECT_THROW(make_template(0, ComponentKind::LaneSwitch, Variant::None, {2, LaneMarking::WhiteSolid, false}),
               ValidationError);
  EXPECT_THROW(make_template(0, ComponentKind::Straight, Variant::Split, {2, LaneMarking::WhiteSolid, false}),
               ValidationError);
  EXPECT_THROW(make_template(0, ComponentKind::LaneSwitch, Variant::Widen, {6, LaneMarking::WhiteSolid, false}),
               ValidationError);
}

TEST(Instantiate, StraightEndpoint) {
  const ComponentTemplate t = find_template(catalog(), ComponentKind::Straight, Variant::None, kTwoBidiSolid);
  const ComponentInstance inst = instantiate(t, params_at(Pose::make({0, 0}, 0.0), 50.0, 3.5));
  ASSERT_EQ(inst.endpoints.size(), 1u);
  EXPECT_NEAR(inst.endpoints[0].pose.position.x, 50.0, 1e-12);
  EXPECT_NEAR(inst.endpoints[0].pose.position.y, 0.0, 1e-12);
  EXPECT_NEAR(inst.endpoints[0].pose.heading, 0.0, 1e-12);
  EXPECT_NEAR(inst.footprint.area(), 50.0 * 7.0, 1e-6);
}

TEST(Instantiate, UTurnReversesHeadingAcrossSpacing) {
  const ComponentTemplate t = find_template(catalog(), ComponentKind::UTurn, Variant::None, kTwoBidiSolid);
  ComponentParams p = params_at(Pose::make({0, 0}, 0.0), 30.0, 3.5);
  p.kind_specific = UTurnParams{20.0, 2.0};
  const ComponentInstance inst = instantiate(t, p);
  ASSERT_EQ(inst.endpoints.size(), 1u);
  const Pose e = inst.endpoints[0].pose;
  EXPECT_NEAR(e.heading, kPi, 1e-12);
  EXPECT_NEAR(e.position.x, 0.0, 1e-9);
  EXPECT_NEAR(std::abs(e.position.y), 20.0, 1e-9);
}

TEST(Instantiate, UTurnRejectsTightSpacingAndZeroApex) {
  const ComponentTemplate t = find_template(catalog(), ComponentKind::UTurn, Variant::None, kTwoBidiSolid);
  ComponentParams p = params_at(Pose::make({0, 0}, 0.0), 30.0, 3.5);
  p.kind_specific = UTurnParams{6.0, 2.0};
  EXPECT_THROW(instantiate(t, p), InstantiationError);
  p.kind_specific = UTurnParams{20.0, 0.0};
  EXPECT_THROW(instantiate(t, p), InstantiationError);
}

TEST(Instantiate, RoundaboutHasThreeEndpoints) {
  roadgen::Rng rng(5);
  const Constraints c = default_constraints();
  int seen = 0;
  for (const ComponentTemplate& t : catalog()) {
    if (t.kind != ComponentKind::Roundabout) continue;
    for (int i = 0; i < 5; ++i) {
      const ComponentInstance inst = instantiate(t, sample_params(t, Pose::make({0, 0}, 0.3 * i), c, rng));
      EXPECT_EQ(inst.endpoints.size(), 3u);
      ++seen;
    }
  }
  EXPECT_GT(seen, 0);
}

TEST(Instantiate, CurveMustStartAtStartPose) {
  const ComponentTemplate t = find_template(catalog(), ComponentKind::Curve, Variant::None, kTwoBidiSolid);
  ComponentParams p = params_at(Pose::make({0, 0}, 0.0), 40.0, 3.5);
  p.kind_specific = CurveParams{{1, 0}, {10, 0}, {30, 10}, {30, 30}};
  EXPECT_THROW(instantiate(t, p), InstantiationError);
  p.kind_specific = CurveParams{{0, 0}, {10, 5}, {30, 10}, {30, 30}};
  EXPECT_THROW(instantiate(t, p), InstantiationError);
  p.kind_specific = CurveParams{{0, 0}, {16.6, 0}, {30, 13.4}, {30, 30}};
  const ComponentInstance inst = instantiate(t, p);
  EXPECT_NEAR(inst.endpoints[0].pose.heading, kPi / 2, 1e-9);
}

TEST(Instantiate, RejectsBadParameters) {
  const ComponentTemplate t = find_template(catalog(), ComponentKind::Straight, Variant::None, kTwoBidiSolid);
  EXPECT_THROW(instantiate(t, params_at(Pose::make({0, 0}, 0.0), -5.0)), InstantiationError);
  EXPECT_THROW(instantiate(t, params_at(Pose::make({0, 0}, 0.0), 50.0, 0.0)), InstantiationError);
  ComponentParams p = params_at(Pose::make({0, 0}, 0.0));
  p.kind_specific = UTurnParams{20.0, 1.0};
  EXPECT_THROW(instantiate(t, p), InstantiationError);
}

TEST(Candidates, MatchingStraightIsOffered) {
  const auto cands = candidates_for(kTwoBidiSolid, catalog());
  const bool has_straight = std::any_of(cands.begin(), cands.end(),
                                        [](const ComponentTemplate& t) { return t.kind == ComponentKind::Straight; });
  EXPECT_TRUE(has_straight);
  EXPECT_TRUE(candidates_for(kTwoBidiSolid, {}).empty());
}

TEST(Candidates, FilterOracleOverCatalog) {
  for (int lanes = 1; lanes <= 6; ++lanes) {
    for (LaneMarking m : kAllMarkings) {
      for (bool bidi : {false, true}) {
        const InterfaceSignature sig{lanes, m, bidi};
        std::vector<int> expected;
        for (const ComponentTemplate& t : catalog()) {
          if (t.signature.lane_count == lanes && t.signature.marking == m && t.signature.bidirectional == bidi) {
            expected.push_back(t.template_id);
          }
        }
        std::vector<int> got;
        for (const ComponentTemplate& t : candidates_for(sig, catalog())) {
          EXPECT_EQ(t.signature.marking, m);
          got.push_back(t.template_id);
        }
        EXPECT_EQ(got, expected);
      }
    }
  }
}

// Every template, several sampled parameter sets.
TEST(InstantiateProperty, EndpointSignaturesFootprintAndDeterminism) {
  const Constraints c = default_constraints();
  roadgen::Rng rng(99);
  rgtest::Gen g(98);
  std::size_t placed = 0;
  for (const ComponentTemplate& t : catalog()) {
    for (int i = 0; i < 4; ++i) {
      const ComponentParams p = sample_params(t, g.pose(200), c, rng);
      const ComponentInstance inst = instantiate(t, p);
      ++placed;
      ASSERT_EQ(static_cast<int>(inst.endpoints.size()), endpoint_count(t.kind));
      for (std::size_t e = 0; e < inst.endpoints.size(); ++e) {
        ASSERT_EQ(inst.endpoints[e].signature, t.endpoint_signatures[e]) << t.template_id;
      }
      for (const Polyline& line : inst.centerlines) {
        for (const Point2& q : line.points) {
          ASSERT_TRUE(inst.footprint.contains(q) ||
                      footprints_overlap(inst.footprint,
                                         Footprint::from_polygon({{q.x - 0.01, q.y - 0.01},
                                                                  {q.x + 0.01, q.y - 0.01},
                                                                  {q.x + 0.01, q.y + 0.01},
                                                                  {q.x - 0.01, q.y + 0.01}}),
                                         0.0))
              << "template " << t.template_id << " point " << q.x << "," << q.y;
        }
      }
      ASSERT_EQ(instantiate(t, p), inst);
    }
  }
  EXPECT_EQ(placed, 4 * catalog().size());
}

TEST(InstantiateProperty, FootprintIsValidPolygon) {
  const Constraints c = default_constraints();
  roadgen::Rng rng(7);
  for (const ComponentTemplate& t : catalog()) {
    const ComponentInstance inst = instantiate(t, sample_params(t, Pose::make({0, 0}, 1.0), c, rng));
    EXPECT_NO_THROW(Footprint::from_polygon(inst.footprint.polygon()));
    EXPECT_GT(inst.footprint.area(), 0.0);
  }
}
