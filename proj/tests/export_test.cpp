#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cstdio>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "roadgen/catalog.hpp"
#include "roadgen/errors.hpp"
#include "roadgen/export.hpp"
#include "roadgen/generation.hpp"
#include "support.hpp"

using namespace roadgen;
using boost::property_tree::ptree;
using rgtest::find_template;
using rgtest::params_at;

namespace {

const std::vector<ComponentTemplate>& catalog() {
  static const std::vector<ComponentTemplate> c = default_catalog();
  return c;
}

const std::vector<RoadScenario>& batch() {
  static const std::vector<RoadScenario> b = [] {
    auto g = generate_batch(GenerationMode::Guided, GenerationBudget::scenarios(120), 6, default_constraints(),
                            catalog(), 2718);
    auto r = generate_batch(GenerationMode::Random, GenerationBudget::scenarios(80), 8, default_constraints(),
                            catalog(), 2719);
    g.insert(g.end(), r.begin(), r.end());
    return g;
  }();
  return b;
}

ptree parse_xml(const std::string& text) {
  std::istringstream in(text);
  ptree tree;
  boost::property_tree::read_xml(in, tree);
  return tree;
}

// Assembles a scenario from instances joined in a chain through endpoint 0.
RoadScenario chain(std::vector<ComponentInstance> parts) {
  RoadScenario s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    assign_id(parts[i], static_cast<int>(i));
    s.covered_area.push_back(parts[i].footprint);
    if (i > 0) s.connections.push_back({{static_cast<int>(i - 1), 0}, static_cast<int>(i)});
    s.instances.push_back(std::move(parts[i]));
  }
  return s;
}

ComponentInstance curve_between(const ComponentTemplate& t, const Pose& from, const Pose& to) {
  const CubicBezier c = bridge_curve(from, to);
  ComponentParams p = params_at(from, distance(from.position, to.position));
  p.kind_specific = CurveParams{c.p0, c.p1, c.p2, c.p3};
  return instantiate(t, p);
}

const InterfaceSignature kSig{2, LaneMarking::WhiteDashed, true};

RoadScenario single_straight() {
  const ComponentTemplate t = find_template(catalog(), ComponentKind::Straight, Variant::None, kSig);
  return chain({instantiate(t, params_at(Pose::make({0, 0}, 0.0), 50.0, 3.5))});
}

// Loops back across its own first road.
RoadScenario self_crossing() {
  const ComponentTemplate straight = find_template(catalog(), ComponentKind::Straight, Variant::None, kSig);
  const ComponentTemplate curve = find_template(catalog(), ComponentKind::Curve, Variant::None, kSig);
  std::vector<ComponentInstance> parts;
  parts.push_back(instantiate(straight, params_at(Pose::make({0, 0}, 0.0), 50.0)));
  const Pose a = parts.back().endpoints[0].pose;
  parts.push_back(curve_between(curve, a, Pose::make({70, 20}, kPi / 2)));
  parts.push_back(curve_between(curve, parts.back().endpoints[0].pose, Pose::make({50, 40}, kPi)));
  parts.push_back(curve_between(curve, parts.back().endpoints[0].pose, Pose::make({30, 20}, 1.5 * kPi)));
  parts.push_back(instantiate(straight, params_at(parts.back().endpoints[0].pose, 40.0)));
  return chain(std::move(parts));
}

}  // namespace

TEST(Json, RoundTripIsIdentity) {
  for (const RoadScenario& s : batch()) {
    const std::string text = to_json(s);
    const RoadScenario back = from_json(text);
    ASSERT_EQ(back, s) << text.substr(0, 200);
    ASSERT_EQ(to_json(back), text);
  }
}

TEST(Json, SerializationIsDeterministicAndCanonical) {
  const RoadScenario& s = batch().front();
  EXPECT_EQ(to_json(s), to_json(s));
  // Every real survives 9-significant-digit text unchanged.
  std::function<void(const nlohmann::json&)> walk = [&](const nlohmann::json& j) {
    if (j.is_number_float()) {
      const double v = j.get<double>();
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.9g", v);
      EXPECT_EQ(std::strtod(buf, nullptr), v);
    }
    for (const auto& child : j) {
      if (j.is_structured()) walk(child);
    }
  };
  for (std::size_t i = 0; i < 20; ++i) walk(nlohmann::json::parse(to_json(batch()[i])));
}

TEST(Json, MetadataRoundTrip) {
  const DocumentMetadata meta{"random", "00112233aabbccdd", 17};
  const std::string text = to_json(single_straight(), meta);
  DocumentMetadata back;
  EXPECT_EQ(from_json(text, &back), single_straight());
  EXPECT_EQ(back, meta);
  EXPECT_NE(text.find(std::string(kSchemaVersion)), std::string::npos);
}

TEST(Json, TruncatedTextIsParseError) {
  const std::string text = to_json(batch().front());
  try {
    from_json(text.substr(0, text.size() / 2));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 0u);
  }
}

TEST(Json, OverlapIsValidationError) {
  const RoadScenario s = self_crossing();
  try {
    validate_scenario(s);
    FAIL() << "fixture should overlap";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.invariant(), "no-overlap");
  }
  try {
    from_json(to_json(s));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.invariant(), "no-overlap");
  }
}

TEST(Json, WrongSchemaVersionRejected) {
  std::string text = to_json(single_straight());
  text.replace(text.find(std::string(kSchemaVersion)), kSchemaVersion.size(), "roadgen.scenario/99");
  EXPECT_THROW(from_json(text), ValidationError);
}

TEST(OpenDrive, SingleStraight) {
  const std::string xodr = to_opendrive(single_straight());
  EXPECT_TRUE(validate_opendrive(xodr).empty());
  const ptree doc = parse_xml(xodr);
  const ptree& root = doc.get_child("OpenDRIVE");
  EXPECT_EQ(root.get<int>("header.<xmlattr>.revMajor"), 1);
  EXPECT_EQ(root.get<int>("header.<xmlattr>.revMinor"), 6);
  EXPECT_EQ(root.count("road"), 1u);
  const ptree& road = root.get_child("road");
  EXPECT_DOUBLE_EQ(road.get<double>("<xmlattr>.length"), 50.0);
  const ptree& section = road.get_child("lanes.laneSection");
  EXPECT_EQ(section.get_child("left").count("lane"), 1u);
  EXPECT_EQ(section.get_child("right").count("lane"), 1u);
  EXPECT_EQ(section.get<std::string>("center.lane.roadMark.<xmlattr>.type"), "broken");
  EXPECT_EQ(section.get<std::string>("center.lane.roadMark.<xmlattr>.color"), "white");
  EXPECT_EQ(road.get_child("planView").count("geometry"), 1u);
  EXPECT_EQ(road.get_child("planView.geometry").count("line"), 1u);
}

TEST(OpenDrive, RoadMarkTable) {
  const std::map<LaneMarking, std::pair<std::string, std::string>> expected{
      {LaneMarking::WhiteDashed, {"broken", "white"}},
      {LaneMarking::WhiteSolid, {"solid", "white"}},
      {LaneMarking::WhiteDoubleSolid, {"solid solid", "white"}},
      {LaneMarking::YellowDashed, {"broken", "yellow"}},
      {LaneMarking::YellowSolid, {"solid", "yellow"}},
      {LaneMarking::YellowDoubleSolid, {"solid solid", "yellow"}},
      {LaneMarking::YellowDashedSolid, {"solid broken", "yellow"}},
  };
  for (const auto& [m, tc] : expected) {
    const RoadMarkStyle s = road_mark_for(m);
    EXPECT_EQ(std::string(s.type), tc.first);
    EXPECT_EQ(std::string(s.color), tc.second);
  }
}

TEST(OpenDrive, OneIntersectionGivesOneJunction) {
  const InterfaceSignature sig{4, LaneMarking::YellowSolid, true};
  const ComponentTemplate straight = find_template(catalog(), ComponentKind::Straight, Variant::None, sig);
  const ComponentTemplate cross = find_template(catalog(), ComponentKind::Intersection, Variant::None, sig);
  std::vector<ComponentInstance> parts;
  parts.push_back(instantiate(straight, params_at(Pose::make({0, 0}, 0.0), 30.0)));
  parts.push_back(instantiate(cross, params_at(parts.back().endpoints[0].pose, 60.0)));
  const RoadScenario s = chain(std::move(parts));
  ASSERT_NO_THROW(validate_scenario(s));
  const std::string xodr = to_opendrive(s);
  EXPECT_TRUE(validate_opendrive(xodr).empty());
  const ptree doc = parse_xml(xodr);
  EXPECT_EQ(doc.get_child("OpenDRIVE").count("junction"), 1u);
}

TEST(OpenDrive, GeneratedScenariosValidateAndLinkEveryConnection) {
  for (const RoadScenario& s : batch()) {
    const std::string xodr = to_opendrive(s);
    const std::vector<std::string> problems = validate_opendrive(xodr);
    ASSERT_TRUE(problems.empty()) << problems.front();
    EXPECT_EQ(to_opendrive(s), xodr);

    const ptree doc = parse_xml(xodr);
    std::map<std::string, std::string> name_of;
    std::vector<std::tuple<std::string, std::string, std::string>> links;  // road name, element type, target id
    int junctions = 0;
    for (const auto& [tag, node] : doc.get_child("OpenDRIVE")) {
      if (tag == "junction") ++junctions;
      if (tag != "road") continue;
      name_of[node.get<std::string>("<xmlattr>.id")] = node.get<std::string>("<xmlattr>.name");
    }
    for (const auto& [tag, node] : doc.get_child("OpenDRIVE")) {
      if (tag != "road") continue;
      for (const char* which : {"link.predecessor", "link.successor"}) {
        if (auto l = node.get_child_optional(which)) {
          links.emplace_back(node.get<std::string>("<xmlattr>.name"), l->get<std::string>("<xmlattr>.elementType"),
                             l->get<std::string>("<xmlattr>.elementId"));
        }
      }
    }
    int expected_junctions = 0;
    for (const ComponentInstance& inst : s.instances) expected_junctions += inst.has_junction ? 1 : 0;
    EXPECT_EQ(junctions, expected_junctions);

    const auto linked = [&](int from, int to) {
      const std::string from_prefix = "c" + std::to_string(from) + "_";
      const std::string to_prefix = "c" + std::to_string(to) + "_";
      return std::any_of(links.begin(), links.end(), [&](const auto& l) {
        return std::get<0>(l).rfind(from_prefix, 0) == 0 && std::get<1>(l) == "road" &&
               name_of[std::get<2>(l)].rfind(to_prefix, 0) == 0;
      });
    };
    for (const Connection& c : s.connections) {
      EXPECT_TRUE(linked(c.from.instance, c.to_instance)) << "connection " << c.from.instance << "->" << c.to_instance;
      EXPECT_TRUE(linked(c.to_instance, c.from.instance)) << "connection " << c.to_instance << "<-" << c.from.instance;
    }
  }
}

TEST(OpenDrive, ValidatorReportsProblems) {
  EXPECT_FALSE(validate_opendrive("<OpenDRIVE>").empty());
  EXPECT_FALSE(validate_opendrive("<OpenDRIVE/>").empty());
  std::string xodr = to_opendrive(single_straight());
  const std::string broken = std::regex_replace(xodr, std::regex(R"(type="broken")"), R"(type="zigzag")");
  EXPECT_FALSE(validate_opendrive(broken).empty());
  std::string bad_len = xodr;
  const std::size_t at = bad_len.find(R"(length="50" id=)");
  ASSERT_NE(at, std::string::npos);
  bad_len.replace(at, 11, R"(length="51")");
  ASSERT_NE(bad_len, xodr);
  EXPECT_FALSE(validate_opendrive(bad_len).empty());
}

TEST(Xml, CheckXml) {
  EXPECT_FALSE(check_xml("<a><b/></a>").has_value());
  EXPECT_TRUE(check_xml("<a><b></a>").has_value());
  EXPECT_TRUE(check_xml("<a/><b/>").has_value());
  EXPECT_TRUE(check_xml("").has_value());
}

namespace {

std::vector<double> svg_numbers(const std::string& svg, const std::string& attr) {
  std::vector<double> out;
  const std::regex re(attr + "=\"([^\"]*)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    std::string s = (*it)[1].str();
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    double v;
    while (in >> v) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(Svg, SingleStraightContents) {
  const RoadScenario s = single_straight();
  const std::string svg = to_svg(s);
  EXPECT_FALSE(check_xml(svg).has_value());
  const auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t p = svg.find(needle); p != std::string::npos; p = svg.find(needle, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("class=\"centerline\""), s.instances[0].centerlines.size());
  EXPECT_EQ(count("class=\"boundary\""), s.instances[0].boundaries.size());
  EXPECT_EQ(count("class=\"footprint\""), 1u);
  EXPECT_EQ(count("class=\"endpoint\""), 1u);
}

TEST(Svg, ViewBoxHasFivePercentMargin) {
  const RoadScenario s = single_straight();
  const std::vector<double> vb = svg_numbers(to_svg(s, 1.0), "viewBox");
  ASSERT_EQ(vb.size(), 4u);
  const BoundingBox b = s.instances[0].footprint.bounds();
  EXPECT_NEAR(vb[2], 1.1 * (b.max_x - b.min_x), 1e-6);
  EXPECT_NEAR(vb[3], 1.1 * (b.max_y - b.min_y), 1e-6);
}

TEST(Svg, ScaleIsUniform) {
  for (std::size_t i = 0; i < 20; ++i) {
    const RoadScenario& s = batch()[i];
    const std::string one = to_svg(s, 1.0);
    const std::string two = to_svg(s, 2.0);
    for (const char* attr : {"points", "viewBox", "cx", "cy"}) {
      const std::vector<double> a = svg_numbers(one, attr);
      const std::vector<double> b = svg_numbers(two, attr);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t k = 0; k < a.size(); ++k) ASSERT_NEAR(b[k], 2.0 * a[k], 1e-6 * (1.0 + std::abs(a[k])));
    }
  }
  EXPECT_THROW(to_svg(batch().front(), 0.0), PreconditionError);
}

TEST(Svg, GeneratedScenariosAreWellFormed) {
  for (const RoadScenario& s : batch()) {
    const std::string svg = to_svg(s);
    ASSERT_FALSE(check_xml(svg).has_value());
    EXPECT_EQ(svg, to_svg(s));
  }
}
