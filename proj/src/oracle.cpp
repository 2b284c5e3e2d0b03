#include "mcpp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

namespace mcpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int local_index(const DecomposedGraph &d, VertexId v) {
    const auto &vs = d.vertices();
    auto it = std::lower_bound(vs.begin(), vs.end(), v);
    if (it == vs.end() || *it != v)
        throw std::invalid_argument("vertex " + to_string(d.coord(v)) + " is not in D");
    return static_cast<int>(it - vs.begin());
}

}  // namespace

void WeightedGraph::add_edge(int a, int b, double w) {
    adjacency[a].push_back({b, w});
    adjacency[b].push_back({a, w});
}

WeightedGraph to_weighted_graph(const DecomposedGraph &d) {
    const auto &vs = d.vertices();
    WeightedGraph g(static_cast<int>(vs.size()));
    for (int i = 0; i < g.size(); ++i)
        for (VertexId u : d.neighbors(vs[i]))
            if (u > vs[i])
                g.add_edge(i, local_index(d, u), d.edge_weight(vs[i], u));
    return g;
}

std::vector<double> closed_cover_costs(const WeightedGraph &g, int root) {
    const int n = g.size();
    if (n > kSingleCoverLimit)
        throw OracleRefusal("exhaustive cover search is limited to " + std::to_string(kSingleCoverLimit) +
                            " vertices, got " + std::to_string(n));
    if (root < 0 || root >= n)
        throw std::invalid_argument("root out of range");
    const std::size_t masks = std::size_t{1} << n;
    // dist[mask * n + v]: cheapest walk from root ending at v having visited mask.
    std::vector<double> dist(masks * static_cast<std::size_t>(n), kInf);
    using Entry = std::tuple<double, std::uint32_t, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    const std::uint32_t start = 1u << root;
    dist[start * n + root] = 0.0;
    queue.emplace(0.0, start, root);
    while (!queue.empty()) {
        auto [dv, mask, v] = queue.top();
        queue.pop();
        if (dv > dist[mask * n + v])
            continue;
        for (const auto &arc : g.adjacency[v]) {
            const std::uint32_t next = mask | (1u << arc.to);
            const double cand = dv + arc.weight;
            if (cand < dist[next * n + arc.to]) {
                dist[next * n + arc.to] = cand;
                queue.emplace(cand, next, arc.to);
            }
        }
    }
    std::vector<double> cost(masks, kInf);
    for (std::size_t m = 0; m < masks; ++m)
        if (m & start)
            cost[m] = dist[m * n + root];
    // Superset minimum: covering more than asked is allowed.
    for (int b = 0; b < n; ++b)
        for (std::size_t m = 0; m < masks; ++m)
            if (!(m & (std::size_t{1} << b)))
                cost[m] = std::min(cost[m], cost[m | (std::size_t{1} << b)]);
    return cost;
}

double oracle_single_cover(const WeightedGraph &g, int root) {
    return closed_cover_costs(g, root).back();
}

double oracle_single_cover(const DecomposedGraph &d, VertexId root) {
    return oracle_single_cover(to_weighted_graph(d), local_index(d, root));
}

double oracle_mcpp(const WeightedGraph &g, std::span<const int> roots) {
    const int n = g.size();
    const int k = static_cast<int>(roots.size());
    if (n > kMcppVertexLimit || k > kMcppRobotLimit)
        throw OracleRefusal("exhaustive makespan search is limited to " + std::to_string(kMcppVertexLimit) +
                            " vertices and " + std::to_string(kMcppRobotLimit) + " robots, got " + std::to_string(n) +
                            " and " + std::to_string(k));
    if (k == 0)
        throw std::invalid_argument("at least one root is required");
    std::vector<std::vector<double>> cover;
    for (int r : roots)
        cover.push_back(closed_cover_costs(g, r));

    // Enumerate every assignment of vertices to robots as a base-k counter.
    double best = kInf;
    std::vector<int> owner(static_cast<std::size_t>(n), 0);
    std::vector<std::uint32_t> mask(static_cast<std::size_t>(k));
    while (true) {
        std::fill(mask.begin(), mask.end(), 0u);
        for (int v = 0; v < n; ++v)
            mask[owner[v]] |= 1u << v;
        double worst = 0.0;
        for (int i = 0; i < k && worst < best; ++i)
            worst = std::max(worst, cover[i][mask[i]]);
        best = std::min(best, worst);
        int pos = 0;
        while (pos < n && ++owner[pos] == k)
            owner[pos++] = 0;
        if (pos == n)
            break;
    }
    return best;
}

double oracle_mcpp(const DecomposedGraph &d, std::span<const VertexId> roots) {
    std::vector<int> local;
    for (VertexId r : roots)
        local.push_back(local_index(d, r));
    return oracle_mcpp(to_weighted_graph(d), local);
}

}  // namespace mcpp
