#pragma once

#include "mcpp/local_search.hpp"
#include "mcpp/partition.hpp"

#include <span>

namespace mcpp {

/// Multi-source Dijkstra on D: each vertex joins its nearest root (ties to the
/// lower robot index). Produces a duplication-free partition.
Partition voronoi_partition(const DecomposedGraph &d, std::span<const VertexId> roots);

/// Greedy rooted tree cover on the terrain: the currently lightest tree (by
/// accumulated w_delta) claims its cheapest adjacent unclaimed cell, then
/// every tree is mapped to the present subcells of its cells.
Partition greedy_tree_cover_init(const DecomposedGraph &d, std::span<const VertexId> roots);

/// ESTC walk per robot.
Solution initial_solution(const Partition &p);

enum class InitKind { Voronoi, GreedyTreeCover };
InitKind parse_init_kind(const std::string &name);
const char *to_string(InitKind k);
Partition make_initial_partition(InitKind kind, const DecomposedGraph &d, std::span<const VertexId> roots);

}  // namespace mcpp
