#include "mcpp/init.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

namespace mcpp {

namespace {

void check_roots(const DecomposedGraph &d, std::span<const VertexId> roots) {
    if (roots.empty())
        throw InstanceError("at least one root is required");
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (!d.present(roots[i]))
            throw InstanceError("root " + std::to_string(i) + " is not a present subcell");
        for (std::size_t j = 0; j < i; ++j)
            if (roots[j] == roots[i])
                throw InstanceError("roots " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
}

// Moves every component of a robot's set that misses its root to the lowest
// indexed robot touching it.
void repair_fragments(const DecomposedGraph &d, std::span<const VertexId> roots, std::vector<std::vector<VertexId>> &sets) {
    const int k = static_cast<int>(roots.size());
    for (bool moved = true; moved;) {
        moved = false;
        for (int i = 0; i < k; ++i) {
            auto comps = connected_components(d, sets[i]);
            if (comps.size() <= 1)
                continue;
            for (const auto &comp : comps) {
                if (std::binary_search(comp.begin(), comp.end(), roots[i]))
                    continue;
                auto in_comp = make_mask(d, comp);
                int target = -1;
                for (int j = 0; j < k && target < 0; ++j) {
                    if (j == i)
                        continue;
                    auto mask = make_mask(d, sets[j]);
                    for (VertexId v : comp) {
                        for (VertexId u : d.neighbors(v))
                            if (mask[u] && !in_comp[u]) {
                                target = j;
                                break;
                            }
                        if (target >= 0)
                            break;
                    }
                }
                if (target < 0)
                    continue;
                std::erase_if(sets[i], [&](VertexId v) { return in_comp[v] != 0; });
                auto mask = make_mask(d, sets[target]);
                for (VertexId v : comp)
                    if (!mask[v])
                        sets[target].push_back(v);
                std::sort(sets[target].begin(), sets[target].end());
                moved = true;
                break;
            }
            if (moved)
                break;
        }
    }
}

}  // namespace

Partition voronoi_partition(const DecomposedGraph &d, std::span<const VertexId> roots) {
    check_roots(d, roots);
    const auto slots = static_cast<std::size_t>(d.slot_count());
    std::vector<double> dist(slots, std::numeric_limits<double>::infinity());
    std::vector<int> owner(slots, -1);
    std::vector<std::uint8_t> settled(slots, 0);
    using Entry = std::tuple<double, int, VertexId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
        dist[roots[i]] = 0.0;
        owner[roots[i]] = i;
        queue.emplace(0.0, i, roots[i]);
    }
    std::vector<std::uint8_t> is_root(slots, 0);
    for (VertexId r : roots)
        is_root[r] = 1;
    // Roots stay with their own robot even across zero-weight edges.
    auto better = [&](double cand, int who, VertexId v) {
        if (is_root[v])
            return false;
        if (cand < dist[v] - kWeightTolerance)
            return true;
        return std::abs(cand - dist[v]) <= kWeightTolerance && who < owner[v];
    };
    while (!queue.empty()) {
        auto [dv, who, v] = queue.top();
        queue.pop();
        if (settled[v] || who != owner[v] || dv != dist[v])
            continue;
        settled[v] = 1;
        for (VertexId u : d.neighbors(v)) {
            if (settled[u])
                continue;
            const double cand = dv + d.edge_weight(v, u);
            if (better(cand, who, u)) {
                dist[u] = cand;
                owner[u] = who;
                queue.emplace(cand, who, u);
            }
        }
    }
    std::vector<std::vector<VertexId>> sets(roots.size());
    for (VertexId v : d.vertices()) {
        if (owner[v] < 0)
            throw InstanceError("decomposed graph is disconnected from every root");
        sets[owner[v]].push_back(v);
    }
    repair_fragments(d, roots, sets);
    return Partition(d, {roots.begin(), roots.end()}, sets);
}

Partition greedy_tree_cover_init(const DecomposedGraph &d, std::span<const VertexId> roots) {
    check_roots(d, roots);
    const TerrainGraph &terrain = d.terrain();
    const int k = static_cast<int>(roots.size());
    const int cells = terrain.cell_count();

    std::vector<std::uint8_t> claimable(static_cast<std::size_t>(cells), 0);
    int remaining = 0;
    for (CellId c = 0; c < cells; ++c)
        if (terrain.present(terrain.coord(c)) && d.present_subcells(c) > 0) {
            claimable[c] = 1;
            ++remaining;
        }

    // Cells reachable from c through a pair of adjacent present subcells.
    auto linked_cells = [&](CellId c) {
        std::vector<CellId> out;
        for (Quadrant q : {NW, NE, SW, SE}) {
            VertexId s = d.subcell(c, q);
            if (!d.present(s))
                continue;
            for (VertexId t : d.neighbors(s))
                if (CellId o = d.cell_of(t); o != c)
                    out.push_back(o);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };

    std::vector<std::vector<CellId>> trees(static_cast<std::size_t>(k));
    std::vector<double> load(static_cast<std::size_t>(k), 0.0);
    std::vector<std::set<std::pair<double, CellId>>> frontier(static_cast<std::size_t>(k));
    std::vector<std::uint8_t> claimed(static_cast<std::size_t>(cells), 0);

    auto claim = [&](int i, CellId c) {
        trees[i].push_back(c);
        load[i] += d.cell_weight(c);
        if (!claimed[c]) {
            claimed[c] = 1;
            --remaining;
        }
        for (CellId o : linked_cells(c))
            if (claimable[o] && !claimed[o])
                frontier[i].emplace(d.cell_weight(o), o);
    };
    for (int i = 0; i < k; ++i)
        claim(i, d.cell_of(roots[i]));

    while (remaining > 0) {
        std::vector<int> order(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return load[a] < load[b]; });
        bool grew = false;
        for (int i : order) {
            auto &f = frontier[i];
            while (!f.empty() && claimed[f.begin()->second])
                f.erase(f.begin());
            if (f.empty())
                continue;
            CellId c = f.begin()->second;
            f.erase(f.begin());
            claim(i, c);
            grew = true;
            break;
        }
        if (!grew)
            throw InstanceError("decomposed graph is disconnected; some cells are unreachable from every root");
    }

    std::vector<std::vector<VertexId>> sets(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        for (CellId c : trees[i])
            for (Quadrant q : {NW, NE, SW, SE})
                if (VertexId s = d.subcell(c, q); d.present(s))
                    sets[i].push_back(s);
        std::sort(sets[i].begin(), sets[i].end());
        sets[i].erase(std::unique(sets[i].begin(), sets[i].end()), sets[i].end());
    }
    repair_fragments(d, roots, sets);
    return Partition(d, {roots.begin(), roots.end()}, sets);
}

Solution initial_solution(const Partition &p) {
    Solution s;
    s.roots = p.roots();
    for (int i = 0; i < p.robot_count(); ++i) {
        s.subgraphs.push_back(p.vertices(i));
        s.paths.push_back(estc_path(p.graph(), s.subgraphs.back(), p.root(i)));
    }
    s.makespan = makespan_of(s.paths);
    return s;
}

InitKind parse_init_kind(const std::string &name) {
    if (name == "vor" || name == "voronoi")
        return InitKind::Voronoi;
    if (name == "greedy")
        return InitKind::GreedyTreeCover;
    throw std::invalid_argument("unknown initializer '" + name + "' (expected vor or greedy)");
}

const char *to_string(InitKind k) { return k == InitKind::Voronoi ? "vor" : "greedy"; }

Partition make_initial_partition(InitKind kind, const DecomposedGraph &d, std::span<const VertexId> roots) {
    return kind == InitKind::Voronoi ? voronoi_partition(d, roots) : greedy_tree_cover_init(d, roots);
}

}  // namespace mcpp
