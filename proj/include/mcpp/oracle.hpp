#pragma once

#include "mcpp/grid.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace mcpp {

/// Raised when an instance is too large for exhaustive search.
class OracleRefusal : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Small undirected weighted graph over vertices 0..n-1.
struct WeightedGraph {
    struct Arc {
        int to;
        double weight;
    };
    std::vector<std::vector<Arc>> adjacency;

    explicit WeightedGraph(int n = 0) : adjacency(static_cast<std::size_t>(n)) {}
    int size() const { return static_cast<int>(adjacency.size()); }
    void add_edge(int a, int b, double w);
};

/// D as a weighted graph; vertex i is d.vertices()[i].
WeightedGraph to_weighted_graph(const DecomposedGraph &d);

inline constexpr int kSingleCoverLimit = 16;
inline constexpr int kMcppVertexLimit = 10;
inline constexpr int kMcppRobotLimit = 3;

/// cost[mask] of the cheapest closed walk from `root` that visits at least
/// the vertices in mask (edges may repeat). Infinite when unreachable.
std::vector<double> closed_cover_costs(const WeightedGraph &g, int root);

/// Cheapest closed walk from root covering every vertex.
double oracle_single_cover(const WeightedGraph &g, int root);
double oracle_single_cover(const DecomposedGraph &d, VertexId root);

/// Minimum makespan over all assignments of the vertices to the robots;
/// each walk may pass through any vertex.
double oracle_mcpp(const WeightedGraph &g, std::span<const int> roots);
double oracle_mcpp(const DecomposedGraph &d, std::span<const VertexId> roots);

}  // namespace mcpp
