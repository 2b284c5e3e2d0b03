#pragma once

#include "mcpp/grid.hpp"

#include <span>
#include <vector>

namespace mcpp {

/// Closed walk on D stored as a cyclic vertex sequence; the step from the
/// last vertex back to the first is implied. A single vertex is a walk of
/// cost 0.
class CoveragePath {
  public:
    CoveragePath() = default;
    CoveragePath(const DecomposedGraph &d, std::vector<VertexId> cyclic);

    const std::vector<VertexId> &vertices() const { return vertices_; }
    /// Sum of traversed edge weights, repeats included.
    double cost() const { return cost_; }
    std::size_t length() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    VertexId root() const { return vertices_.empty() ? kNoVertex : vertices_.front(); }
    /// The walk with the root repeated at the end.
    std::vector<VertexId> closed() const;

    bool operator==(const CoveragePath &) const = default;

  private:
    std::vector<VertexId> vertices_;
    double cost_ = 0.0;
};

/// Node of the augmented terrain graph G'. A terrain cell maps to one node,
/// except a cell holding exactly a diagonal pair of subcells, which maps to
/// two.
struct AugmentedNode {
    CellId cell = -1;
    std::vector<VertexId> subcells;  // ascending
    bool complete = false;           // all four subcells in the subgraph
};

struct AugmentedEdge {
    int a = 0;  // a < b
    int b = 0;
    double weight = 0.0;
};

struct AugmentedTerrainGraph {
    std::vector<AugmentedNode> nodes;  // ordered by (cell, first subcell)
    std::vector<AugmentedEdge> edges;  // ordered by (a, b)
    /// Node id per D slot, -1 outside the subgraph.
    std::vector<int> node_of;
};

struct SpanningTree {
    int root = 0;
    std::vector<int> parent;  // -1 at the root
    std::vector<AugmentedEdge> edges;
    double weight = 0.0;
};

enum class EdgeWeighting {
    /// Original weights between complete nodes, manipulated weights otherwise.
    Prioritized,
    /// Every edge weighs 1 (weight-agnostic tree, ablation baseline).
    Uniform,
};

/// Builds G' for the subgraph induced by `subgraph` (must be connected).
AugmentedTerrainGraph build_augmented_terrain(const DecomposedGraph &d, std::span<const VertexId> subgraph,
                                              EdgeWeighting weighting = EdgeWeighting::Prioritized);

/// Kruskal MST on G'; ties break on (weight, smaller node id, larger node id).
/// Throws std::invalid_argument when G' is disconnected.
SpanningTree minimum_spanning_tree(const AugmentedTerrainGraph &g, int root);

/// Coverage walk from `root` over the connected subgraph `subgraph`
/// (any order): circumnavigates the MST of G', splicing around
/// incomplete nodes where the usual side is unavailable.
CoveragePath estc_path(const DecomposedGraph &d, std::span<const VertexId> subgraph, VertexId root);

/// Same walk construction over a weight-agnostic spanning tree.
CoveragePath full_stc_path(const DecomposedGraph &d, std::span<const VertexId> subgraph, VertexId root);

/// Shared implementation behind estc_path / full_stc_path.
CoveragePath circumnavigate(const DecomposedGraph &d, std::span<const VertexId> subgraph, VertexId root,
                            EdgeWeighting weighting);

}  // namespace mcpp
