#include <gtest/gtest.h>

#include <map>
#include <set>
#include <tuple>

#include "roadgen/catalog.hpp"
#include "roadgen/constraints.hpp"
#include "roadgen/errors.hpp"

using namespace roadgen;

TEST(Catalog, EmptyTableGivesEmptyCatalog) {
  EXPECT_TRUE(build_catalog(parse_catalog_table(R"({"rows": []})")).empty());
}

TEST(Catalog, StraightOnlyTableCountEqualsRowCombinations) {
  const CatalogTable table = parse_catalog_table(R"({"rows": [
    {"kind": "Straight", "lane_counts": [1, 2, 3, 4, 5, 6],
     "markings": ["WhiteDashed", "WhiteSolid", "WhiteDoubleSolid", "YellowDashed", "YellowSolid",
                  "YellowDoubleSolid", "YellowDashedSolid"],
     "bidirectional": [false]},
    {"kind": "Straight", "lane_counts": [2, 4, 6],
     "markings": ["WhiteDashed", "WhiteSolid", "WhiteDoubleSolid", "YellowDashed", "YellowSolid",
                  "YellowDoubleSolid", "YellowDashedSolid"],
     "bidirectional": [true]}]})");
  const auto cat = build_catalog(table);
  EXPECT_EQ(cat.size(), 6u * 7u + 3u * 7u);
  for (std::size_t i = 0; i < cat.size(); ++i) EXPECT_EQ(cat[i].template_id, static_cast<int>(i));
}

TEST(Catalog, RepeatedRowsAreCollapsed) {
  const auto cat = build_catalog(parse_catalog_table(R"({"rows": [
    {"kind": "Straight", "lane_counts": [2], "markings": ["WhiteSolid"], "bidirectional": [false]},
    {"kind": "Straight", "lane_counts": [2, 3], "markings": ["WhiteSolid"], "bidirectional": [false]}]})"));
  ASSERT_EQ(cat.size(), 2u);
  EXPECT_EQ(cat[0].signature.lane_count, 2);
  EXPECT_EQ(cat[1].signature.lane_count, 3);
}

TEST(Catalog, LaneCountOutsideRangeIsRejected) {
  const CatalogTable table = parse_catalog_table(
      R"({"rows": [{"kind": "Straight", "lane_counts": [7], "markings": ["WhiteSolid"], "bidirectional": [false]}]})");
  EXPECT_THROW(build_catalog(table), ValidationError);
}

TEST(Catalog, MalformedAndUnknownInput) {
  EXPECT_THROW(parse_catalog_table(R"({"rows": [)"), ParseError);
  EXPECT_THROW(parse_catalog_table(R"({"rows": [{"kind": "Bridge", "lane_counts": [1], "markings": ["WhiteSolid"],
                                      "bidirectional": [false]}]})"),
               ValidationError);
  EXPECT_THROW(parse_catalog_table(R"({"rows": [{"kind": "Straight", "lanes": [1], "markings": ["WhiteSolid"],
                                      "bidirectional": [false]}]})"),
               ValidationError);
}

TEST(Catalog, ParseErrorCarriesPosition) {
  try {
    parse_catalog_table("{\n  \"rows\": [\n    oops\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(DefaultCatalog, CompositionAndIds) {
  const auto cat = default_catalog();
  ASSERT_EQ(cat.size(), 241u);
  std::map<ComponentKind, int> per_kind;
  std::set<std::tuple<ComponentKind, Variant, InterfaceSignature>> keys;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(cat[i].template_id, static_cast<int>(i));
    ++per_kind[cat[i].kind];
    EXPECT_TRUE(keys.insert({cat[i].kind, cat[i].variant, cat[i].signature}).second);
    EXPECT_GE(cat[i].signature.lane_count, 1);
    EXPECT_LE(cat[i].signature.lane_count, 6);
  }
  EXPECT_EQ(per_kind[ComponentKind::Straight], 38);
  EXPECT_EQ(per_kind[ComponentKind::Curve], 38);
  EXPECT_EQ(per_kind[ComponentKind::UTurn], 31);
  EXPECT_EQ(per_kind[ComponentKind::LaneSwitch], 56);
  EXPECT_EQ(per_kind[ComponentKind::Fork], 22);
  EXPECT_EQ(per_kind[ComponentKind::TIntersection], 21);
  EXPECT_EQ(per_kind[ComponentKind::Intersection], 21);
  EXPECT_EQ(per_kind[ComponentKind::Roundabout], 14);
}

TEST(DefaultCatalog, EveryEndpointSignatureHasCandidates) {
  const auto cat = default_catalog();
  for (const ComponentTemplate& t : cat) {
    for (const InterfaceSignature& s : t.endpoint_signatures) {
      EXPECT_FALSE(candidates_for(s, cat).empty()) << to_string(s);
    }
  }
}

TEST(DefaultCatalog, BuildIsIdempotent) {
  EXPECT_EQ(default_catalog(), default_catalog());
  EXPECT_EQ(catalog_listing(default_catalog()), catalog_listing(default_catalog()));
  EXPECT_EQ(catalog_hash(default_catalog()).size(), 16u);
}

TEST(Constraints, DefaultsAndOverrides) {
  const Constraints d = default_constraints();
  EXPECT_EQ(d.length_for(ComponentKind::Straight), (Range{20.0, 100.0}));
  EXPECT_EQ(d.lane_width_range, (Range{3.0, 4.0}));
  EXPECT_EQ(d.expansion_probability, 0.5);
  EXPECT_EQ(d.max_instantiation_retries, 16);

  const Constraints c = parse_constraints(
      R"({"length_range": {"default": [10, 30], "Roundabout": [40, 60]}, "expansion_probability": 0.8})");
  EXPECT_EQ(c.length_for(ComponentKind::Curve), (Range{10.0, 30.0}));
  EXPECT_EQ(c.length_for(ComponentKind::Roundabout), (Range{40.0, 60.0}));
  EXPECT_EQ(c.expansion_probability, 0.8);
  EXPECT_EQ(parse_constraints(constraints_to_json(c)), c);
}

TEST(Constraints, InvalidValuesAreRejected) {
  EXPECT_THROW(parse_constraints(R"({"expansion_probability": 0})"), ValidationError);
  EXPECT_THROW(parse_constraints(R"({"expansion_probability": 1.5})"), ValidationError);
  EXPECT_THROW(parse_constraints(R"({"lane_width_range": [4, 3]})"), ValidationError);
  EXPECT_THROW(parse_constraints(R"({"max_instantiation_retries": 0})"), ValidationError);
  EXPECT_THROW(parse_constraints(R"({"retries": 3})"), ValidationError);
  EXPECT_THROW(parse_constraints(R"({"length_range": {"Bridge": [1, 2]}})"), ValidationError);
  EXPECT_THROW(parse_constraints(R"({"expansion_probability": )"), ParseError);
}
