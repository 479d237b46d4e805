#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "roadgen/components.hpp"
#include "roadgen/generation.hpp"

namespace roadgen {

using Edge = std::pair<int, int>;  // first < second

// Undirected simple graph with component-kind vertex labels.
class TopologyGraph {
 public:
  TopologyGraph() = default;

  // Edges are normalized and parallel edges collapsed. Throws
  // PreconditionError for self-loops or out-of-range vertex ids.
  TopologyGraph(std::vector<ComponentKind> vertices, const std::vector<Edge>& edges);

  const std::vector<ComponentKind>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t degree(int vertex) const;

 private:
  std::vector<ComponentKind> vertices_;
  std::vector<Edge> edges_;  // sorted, unique
};

TopologyGraph to_graph(const RoadScenario& scenario);

// True iff `other` has an edge with the same unordered pair of kinds as `e`.
bool edge_duplicated(const TopologyGraph& g, const Edge& e, const TopologyGraph& other);

// True iff every edge incident to `u` is duplicated in `other`. An isolated
// vertex is duplicated iff `other` has a vertex of the same kind.
bool vertex_duplicated(const TopologyGraph& g, int u, const TopologyGraph& other);

// Fraction of vertices of both graphs that are duplicated in the other
// graph. Throws PreconditionError if either graph has no vertices.
double similarity(const TopologyGraph& g1, const TopologyGraph& g2);

bool is_duplicate(const TopologyGraph& g1, const TopologyGraph& g2);

// Greedy filter in input order: an item is kept iff its similarity to every
// kept item is below `threshold`. Returns kept indices. Throws
// PreconditionError unless 0 < threshold <= 1.
std::vector<std::size_t> deduplicate_indices(std::span<const TopologyGraph> graphs, double threshold = 1.0);
std::vector<RoadScenario> deduplicate(std::span<const RoadScenario> scenarios, double threshold = 1.0);

// after / before. Throws PreconditionError when before == 0 or after > before.
double uniqueness_rate(std::size_t before, std::size_t after);

}  // namespace roadgen
