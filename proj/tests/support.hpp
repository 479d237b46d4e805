#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "roadgen/catalog.hpp"
#include "roadgen/components.hpp"
#include "roadgen/constraints.hpp"
#include "roadgen/generation.hpp"
#include "roadgen/geometry.hpp"
#include "roadgen/topology.hpp"

namespace rgtest {

using namespace roadgen;

// Test-side random source, independent of the library's Rng.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  std::uint64_t u64() { return engine_(); }

  Point2 point(double extent = 100.0) { return {real(-extent, extent), real(-extent, extent)}; }

  CubicBezier curve(double extent = 100.0) {
    Point2 p0 = point(extent);
    Point2 p3 = point(extent);
    while (p3 == p0) p3 = point(extent);
    return CubicBezier::make(p0, point(extent), point(extent), p3);
  }

  Pose pose(double extent = 100.0) { return Pose::make(point(extent), real(0.0, 2.0 * kPi)); }

  ComponentKind kind() { return kAllKinds[static_cast<std::size_t>(integer(0, kKindCount - 1))]; }

  // Up to `max_vertices` vertices, each pair joined with probability `density`.
  TopologyGraph graph(int max_vertices = 5, double density = 0.5) {
    const int n = integer(1, max_vertices);
    std::vector<ComponentKind> v;
    for (int i = 0; i < n; ++i) v.push_back(kind());
    std::vector<Edge> e;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (coin(density)) e.emplace_back(a, b);
      }
    }
    return TopologyGraph(v, e);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Brute-force evaluation of the duplicated-edge and duplicated-vertex rules,
// written without the library's bit masks.
struct SimOracle {
  static std::pair<ComponentKind, ComponentKind> kinds_of(const TopologyGraph& g, const Edge& e) {
    ComponentKind a = g.vertices()[static_cast<std::size_t>(e.first)];
    ComponentKind b = g.vertices()[static_cast<std::size_t>(e.second)];
    if (b < a) std::swap(a, b);
    return {a, b};
  }

  static bool de(const TopologyGraph& g, const Edge& e, const TopologyGraph& other) {
    const auto want = kinds_of(g, e);
    for (const Edge& f : other.edges()) {
      if (kinds_of(other, f) == want) return true;
    }
    return false;
  }

  static bool dv(const TopologyGraph& g, int u, const TopologyGraph& other) {
    bool any_edge = false;
    for (const Edge& e : g.edges()) {
      if (e.first != u && e.second != u) continue;
      any_edge = true;
      if (!de(g, e, other)) return false;
    }
    if (any_edge) return true;
    const ComponentKind k = g.vertices()[static_cast<std::size_t>(u)];
    return std::find(other.vertices().begin(), other.vertices().end(), k) != other.vertices().end();
  }

  static std::pair<int, int> counts(const TopologyGraph& g1, const TopologyGraph& g2) {
    int dup = 0;
    for (int i = 0; i < static_cast<int>(g1.vertices().size()); ++i) dup += dv(g1, i, g2) ? 1 : 0;
    for (int i = 0; i < static_cast<int>(g2.vertices().size()); ++i) dup += dv(g2, i, g1) ? 1 : 0;
    return {dup, static_cast<int>(g1.vertices().size() + g2.vertices().size())};
  }

  static double sim(const TopologyGraph& g1, const TopologyGraph& g2) {
    const auto [num, den] = counts(g1, g2);
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

// Point inside or on the convex hull of `pts`, within `tol`.
inline bool in_convex_hull(std::vector<Point2> pts, Point2 q, double tol) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const auto cr = [](Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
  std::vector<Point2> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (const Point2& p : pts) {
      while (hull.size() >= base + 2 && cr(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  if (hull.size() < 3) {
    // Degenerate hull: a segment or a point.
    const Point2 a = pts.front();
    const Point2 b = pts.back();
    const Point2 ab{b.x - a.x, b.y - a.y};
    const double len2 = ab.x * ab.x + ab.y * ab.y;
    double t = len2 > 0 ? ((q.x - a.x) * ab.x + (q.y - a.y) * ab.y) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = a.x + t * ab.x - q.x;
    const double dy = a.y + t * ab.y - q.y;
    return std::sqrt(dx * dx + dy * dy) <= tol;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 a = hull[i];
    const Point2 b = hull[(i + 1) % hull.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (cr(a, b, q) / len < -tol) return false;
  }
  return true;
}

inline std::vector<Point2> square(double x, double y, double side = 1.0) {
  return {{x, y}, {x + side, y}, {x + side, y + side}, {x, y + side}};
}

inline ComponentTemplate find_template(const std::vector<ComponentTemplate>& catalog, ComponentKind kind,
                                       Variant variant, InterfaceSignature sig) {
  for (const ComponentTemplate& t : catalog) {
    if (t.kind == kind && t.variant == variant && t.signature == sig) return t;
  }
  throw std::runtime_error("template not in catalog");
}

inline ComponentParams params_at(Pose start, double length = 50.0, double width = 3.5) {
  ComponentParams p;
  p.length = length;
  p.lane_width = width;
  p.start = start;
  return p;
}

// Connected-components count over instances using the scenario's connections.
inline int component_count(const RoadScenario& s) {
  const int n = static_cast<int>(s.instances.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const Connection& c : s.connections) {
    adj[static_cast<std::size_t>(c.from.instance)].push_back(c.to_instance);
    adj[static_cast<std::size_t>(c.to_instance)].push_back(c.from.instance);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int parts = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++parts;
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return parts;
}

}  // namespace rgtest
