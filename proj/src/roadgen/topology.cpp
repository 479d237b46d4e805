#include "roadgen/topology.hpp"

#include <algorithm>
#include <cstdint>

#include "roadgen/errors.hpp"

namespace roadgen {

TopologyGraph::TopologyGraph(std::vector<ComponentKind> vertices, const std::vector<Edge>& edges)
    : vertices_(std::move(vertices)) {
  const int n = static_cast<int>(vertices_.size());
  for (const Edge& e : edges) {
    if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n) {
      throw PreconditionError("TopologyGraph: edge references a missing vertex");
    }
    if (e.first == e.second) throw PreconditionError("TopologyGraph: self-loop");
    edges_.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::size_t TopologyGraph::degree(int vertex) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return e.first == vertex || e.second == vertex;
  }));
}

TopologyGraph to_graph(const RoadScenario& scenario) {
  std::vector<ComponentKind> vertices;
  vertices.reserve(scenario.instances.size());
  for (const ComponentInstance& inst : scenario.instances) vertices.push_back(inst.tmpl.kind);
  std::vector<Edge> edges;
  for (const Connection& c : scenario.connections) edges.emplace_back(c.from.instance, c.to_instance);
  return TopologyGraph(std::move(vertices), edges);
}

namespace {

std::uint64_t pair_bit(ComponentKind a, ComponentKind b) {
  const auto x = static_cast<unsigned>(a);
  const auto y = static_cast<unsigned>(b);
  return std::uint64_t{1} << (std::min(x, y) * kKindCount + std::max(x, y));
}

// Kind-pair sets of a graph and of each vertex's incident edges.
struct Summary {
  std::uint64_t pairs = 0;
  unsigned kinds = 0;
  std::vector<std::uint64_t> incident;
};

Summary summarize(const TopologyGraph& g) {
  Summary s;
  s.incident.assign(g.vertices().size(), 0);
  for (ComponentKind k : g.vertices()) s.kinds |= 1u << static_cast<unsigned>(k);
  for (const Edge& e : g.edges()) {
    const std::uint64_t bit = pair_bit(g.vertices()[static_cast<std::size_t>(e.first)],
                                       g.vertices()[static_cast<std::size_t>(e.second)]);
    s.pairs |= bit;
    s.incident[static_cast<std::size_t>(e.first)] |= bit;
    s.incident[static_cast<std::size_t>(e.second)] |= bit;
  }
  return s;
}

std::size_t duplicated_vertices(const TopologyGraph& g, const Summary& own, const Summary& other) {
  std::size_t n = 0;
  for (std::size_t u = 0; u < g.vertices().size(); ++u) {
    const bool dup = own.incident[u] == 0 ? (other.kinds >> static_cast<unsigned>(g.vertices()[u]) & 1u) != 0
                                          : (own.incident[u] & ~other.pairs) == 0;
    if (dup) ++n;
  }
  return n;
}

double similarity_of(const TopologyGraph& g1, const Summary& s1, const TopologyGraph& g2, const Summary& s2) {
  const std::size_t total = g1.vertices().size() + g2.vertices().size();
  return static_cast<double>(duplicated_vertices(g1, s1, s2) + duplicated_vertices(g2, s2, s1)) /
         static_cast<double>(total);
}

void require_vertex(const TopologyGraph& g, int u) {
  if (u < 0 || u >= static_cast<int>(g.vertices().size())) throw PreconditionError("vertex not in graph");
}

}  // namespace

bool edge_duplicated(const TopologyGraph& g, const Edge& e, const TopologyGraph& other) {
  require_vertex(g, e.first);
  require_vertex(g, e.second);
  const std::uint64_t bit =
      pair_bit(g.vertices()[static_cast<std::size_t>(e.first)], g.vertices()[static_cast<std::size_t>(e.second)]);
  return (summarize(other).pairs & bit) != 0;
}

bool vertex_duplicated(const TopologyGraph& g, int u, const TopologyGraph& other) {
  require_vertex(g, u);
  const Summary own = summarize(g);
  const Summary theirs = summarize(other);
  const std::uint64_t inc = own.incident[static_cast<std::size_t>(u)];
  if (inc == 0) return (theirs.kinds >> static_cast<unsigned>(g.vertices()[static_cast<std::size_t>(u)]) & 1u) != 0;
  return (inc & ~theirs.pairs) == 0;
}

double similarity(const TopologyGraph& g1, const TopologyGraph& g2) {
  if (g1.vertices().empty() || g2.vertices().empty()) throw PreconditionError("similarity: empty graph");
  return similarity_of(g1, summarize(g1), g2, summarize(g2));
}

bool is_duplicate(const TopologyGraph& g1, const TopologyGraph& g2) { return similarity(g1, g2) == 1.0; }

std::vector<std::size_t> deduplicate_indices(std::span<const TopologyGraph> graphs, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw PreconditionError("deduplicate: threshold must be in (0, 1]");
  std::vector<Summary> summaries;
  summaries.reserve(graphs.size());
  for (const TopologyGraph& g : graphs) {
    if (g.vertices().empty()) throw PreconditionError("deduplicate: empty graph");
    summaries.push_back(summarize(g));
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const bool keep = std::all_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return similarity_of(graphs[i], summaries[i], graphs[k], summaries[k]) < threshold;
    });
    if (keep) kept.push_back(i);
  }
  return kept;
}

std::vector<RoadScenario> deduplicate(std::span<const RoadScenario> scenarios, double threshold) {
  std::vector<TopologyGraph> graphs;
  graphs.reserve(scenarios.size());
  for (const RoadScenario& s : scenarios) graphs.push_back(to_graph(s));
  std::vector<RoadScenario> out;
  for (std::size_t i : deduplicate_indices(graphs, threshold)) out.push_back(scenarios[i]);
  return out;
}

double uniqueness_rate(std::size_t before, std::size_t after) {
  if (before == 0) throw PreconditionError("uniqueness_rate: undefined for an empty run");
  if (after > before) throw PreconditionError("uniqueness_rate: after exceeds before");
  return static_cast<double>(after) / static_cast<double>(before);
}

}  // namespace roadgen
