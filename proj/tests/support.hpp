#pragma once

#include "mcpp/grid.hpp"
#include "mcpp/instance.hpp"
#include "mcpp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace testing {

using namespace mcpp;

/// Terrain from rows of '.' (free) and '@' (obstacle), uniform weight w.
inline TerrainGraph terrain(const std::vector<std::string> &rows, double w = 1.0) {
    std::vector<std::uint8_t> present;
    for (const auto &r : rows)
        for (char c : r)
            present.push_back(c == '.');
    return TerrainGraph(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()), present, w);
}

inline DecomposedGraph decompose(const std::vector<std::string> &rows, std::vector<SubCellCoord> blocked = {},
                                 double w = 1.0) {
    return build_decomposed_graph(terrain(rows, w), blocked);
}

inline VertexId at(const DecomposedGraph &d, int col, int row) { return d.id(SubCellCoord{col, row}); }

/// Every vertex of D, for single-robot subgraphs.
inline std::vector<VertexId> all(const DecomposedGraph &d) { return d.vertices(); }

/// Occurrence count of each vertex in a walk.
inline std::vector<int> visits(const DecomposedGraph &d, const std::vector<VertexId> &walk) {
    std::vector<int> n(static_cast<std::size_t>(d.slot_count()), 0);
    for (VertexId v : walk)
        ++n[v];
    return n;
}

/// Walk cost recomputed straight from the weight formula.
inline double walk_cost(const DecomposedGraph &d, const std::vector<VertexId> &walk) {
    if (walk.size() < 2)
        return 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < walk.size(); ++k) {
        VertexId a = walk[k], b = walk[(k + 1) % walk.size()];
        const TerrainGraph &g = d.terrain();
        total += (terrain_vertex_weight(g, d.coord(a).parent()) + terrain_vertex_weight(g, d.coord(b).parent())) / 8.0;
    }
    return total;
}

/// Minimum closed covering walk by Held-Karp over the shortest-path metric
/// closure of `sub` (walks may only use vertices of `sub`).
inline double held_karp_cover(const DecomposedGraph &d, const std::vector<VertexId> &sub, VertexId root) {
    const int n = static_cast<int>(sub.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, inf));
    for (int i = 0; i < n; ++i) {
        dist[i][i] = 0.0;
        for (int j = 0; j < n; ++j)
            if (d.adjacent(sub[i], sub[j]))
                dist[i][j] = d.edge_weight(sub[i], sub[j]);
    }
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                dist[i][j] = std::min(dist[i][j], dist[i][m] + dist[m][j]);
    const int r = static_cast<int>(std::find(sub.begin(), sub.end(), root) - sub.begin());
    if (n == 1)
        return 0.0;
    // best[mask][j]: cheapest path from r visiting mask (r excluded) ending at j.
    const std::size_t masks = std::size_t{1} << n;
    std::vector<double> best(masks * n, inf);
    for (int j = 0; j < n; ++j)
        if (j != r)
            best[(std::size_t{1} << j) * n + j] = dist[r][j];
    for (std::size_t m = 1; m < masks; ++m) {
        if (m & (std::size_t{1} << r))
            continue;
        for (int j = 0; j < n; ++j) {
            const double cur = best[m * n + j];
            if (cur == inf)
                continue;
            for (int l = 0; l < n; ++l) {
                if (l == r || (m & (std::size_t{1} << l)))
                    continue;
                const std::size_t next = m | (std::size_t{1} << l);
                best[next * n + l] = std::min(best[next * n + l], cur + dist[j][l]);
            }
        }
    }
    const std::size_t full = (masks - 1) & ~(std::size_t{1} << r);
    double out = inf;
    for (int j = 0; j < n; ++j)
        if (j != r)
            out = std::min(out, best[full * n + j] + dist[j][r]);
    return out;
}

/// True when `sets` covers D and each set is connected and holds its root.
inline bool covers(const DecomposedGraph &d, const std::vector<std::vector<VertexId>> &sets) {
    std::vector<int> n(static_cast<std::size_t>(d.slot_count()), 0);
    for (const auto &s : sets)
        for (VertexId v : s)
            ++n[v];
    for (VertexId v : d.vertices())
        if (n[v] == 0)
            return false;
    return true;
}

}  // namespace testing
