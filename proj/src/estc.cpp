#include "mcpp/estc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace mcpp {

CoveragePath::CoveragePath(const DecomposedGraph &d, std::vector<VertexId> cyclic) : vertices_(std::move(cyclic)) {
    const std::size_t n = vertices_.size();
    if (n < 2)
        return;
    for (std::size_t i = 0; i < n; ++i) {
        VertexId a = vertices_[i];
        VertexId b = vertices_[(i + 1) % n];
        if (!d.adjacent(a, b))
            throw std::logic_error("coverage walk steps between nonadjacent subcells " + to_string(d.coord(a)) +
                                   " and " + to_string(d.coord(b)));
        cost_ += d.edge_weight(a, b);
    }
}

std::vector<VertexId> CoveragePath::closed() const {
    std::vector<VertexId> out = vertices_;
    if (!out.empty())
        out.push_back(out.front());
    return out;
}

namespace {

constexpr int bit(Quadrant q) { return 1 << q; }

bool is_diagonal_pair(int bits) {
    return bits == (bit(NW) | bit(SE)) || bits == (bit(NE) | bit(SW));
}

// Disjoint-set forest with path halving.
class DisjointSets {
  public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x)
            x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

  private:
    std::vector<int> parent_;
};

}  // namespace

AugmentedTerrainGraph build_augmented_terrain(const DecomposedGraph &d, std::span<const VertexId> subgraph,
                                              EdgeWeighting weighting) {
    if (subgraph.empty())
        throw std::invalid_argument("augmented terrain graph needs a nonempty subgraph");
    AugmentedTerrainGraph g;
    g.node_of.assign(static_cast<std::size_t>(d.slot_count()), -1);

    std::vector<std::pair<CellId, VertexId>> by_cell;
    by_cell.reserve(subgraph.size());
    for (VertexId v : subgraph) {
        if (!d.present(v))
            throw std::invalid_argument("subgraph vertex " + std::to_string(v) + " is not in D");
        by_cell.emplace_back(d.cell_of(v), v);
    }
    std::sort(by_cell.begin(), by_cell.end());
    by_cell.erase(std::unique(by_cell.begin(), by_cell.end()), by_cell.end());

    for (std::size_t i = 0; i < by_cell.size();) {
        std::size_t j = i;
        int bits = 0;
        while (j < by_cell.size() && by_cell[j].first == by_cell[i].first)
            bits |= bit(d.quadrant_of(by_cell[j++].second));
        const CellId cell = by_cell[i].first;
        if (is_diagonal_pair(bits)) {
            for (std::size_t k = i; k < j; ++k) {
                g.node_of[by_cell[k].second] = static_cast<int>(g.nodes.size());
                g.nodes.push_back({cell, {by_cell[k].second}, false});
            }
        } else {
            AugmentedNode node{cell, {}, bits == 0xF};
            for (std::size_t k = i; k < j; ++k) {
                node.subcells.push_back(by_cell[k].second);
                g.node_of[by_cell[k].second] = static_cast<int>(g.nodes.size());
            }
            g.nodes.push_back(std::move(node));
        }
        i = j;
    }

    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < static_cast<int>(g.nodes.size()); ++a)
        for (VertexId s : g.nodes[a].subcells)
            for (VertexId t : d.neighbors(s))
                if (int b = g.node_of[t]; b > a)
                    pairs.emplace_back(a, b);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    const TerrainGraph &terrain = d.terrain();
    const double w_max = terrain.max_edge_weight();
    for (auto [a, b] : pairs) {
        const auto &na = g.nodes[a];
        const auto &nb = g.nodes[b];
        double w = 1.0;
        if (weighting == EdgeWeighting::Prioritized) {
            if (na.complete && nb.complete) {
                w = terrain.edge_weight(terrain.coord(na.cell), terrain.coord(nb.cell)).value_or(0.0);
            } else {
                w = w_max * 0.5 * (d.cell_weight(na.cell) + d.cell_weight(nb.cell));
            }
        }
        g.edges.push_back({a, b, w});
    }
    return g;
}

SpanningTree minimum_spanning_tree(const AugmentedTerrainGraph &g, int root) {
    const int n = static_cast<int>(g.nodes.size());
    if (root < 0 || root >= n)
        throw std::invalid_argument("spanning tree root is not a node of the graph");
    std::vector<AugmentedEdge> order = g.edges;
    std::stable_sort(order.begin(), order.end(), [](const AugmentedEdge &x, const AugmentedEdge &y) {
        return std::tie(x.weight, x.a, x.b) < std::tie(y.weight, y.a, y.b);
    });

    SpanningTree tree;
    tree.root = root;
    DisjointSets sets(n);
    for (const auto &e : order) {
        if (sets.unite(e.a, e.b)) {
            tree.edges.push_back(e);
            tree.weight += e.weight;
        }
    }
    if (static_cast<int>(tree.edges.size()) != n - 1)
        throw std::invalid_argument("augmented terrain graph is disconnected");

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto &e : tree.edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    tree.parent.assign(static_cast<std::size_t>(n), -2);
    tree.parent[root] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v]) {
            if (tree.parent[u] == -2) {
                tree.parent[u] = v;
                stack.push_back(u);
            }
        }
    }
    return tree;
}

namespace {

// Closed walk kept as a circular singly linked list of vertex occurrences so
// that merging a child node into the walk is O(occurrences of two nodes).
class WalkBuilder {
  public:
    WalkBuilder(const DecomposedGraph &d, const AugmentedTerrainGraph &g) : d_(d), g_(g), occ_of_node_(g.nodes.size()) {
        for (int n = 0; n < static_cast<int>(g.nodes.size()); ++n)
            seed_local_walk(n);
    }

    void merge(int parent_node, int child_node) {
        if (!try_swap(parent_node, child_node))
            splice(parent_node, child_node);
    }

    std::vector<VertexId> extract(VertexId root) const {
        int start = -1;
        for (int o : occ_of_node_[g_.node_of[root]])
            if (vertex_[o] == root) {
                start = o;
                break;
            }
        std::vector<VertexId> walk;
        walk.reserve(vertex_.size());
        int o = start;
        do {
            walk.push_back(vertex_[o]);
            o = next_[o];
        } while (o != start);
        if (walk.size() != vertex_.size())
            throw std::logic_error("walk construction left detached occurrences");
        return walk;
    }

  private:
    int add(VertexId v, int node) {
        vertex_.push_back(v);
        next_.push_back(static_cast<int>(next_.size()));
        occ_of_node_[node].push_back(static_cast<int>(vertex_.size()) - 1);
        return static_cast<int>(vertex_.size()) - 1;
    }

    // Clockwise (screen coordinates) local walk around the node's subcells.
    void seed_local_walk(int n) {
        static constexpr Quadrant kRing[4] = {NW, NE, SE, SW};
        const auto &node = g_.nodes[n];
        int bits = 0;
        for (VertexId v : node.subcells)
            bits |= bit(d_.quadrant_of(v));
        std::vector<VertexId> seq;
        if (node.subcells.size() == 1) {
            seq = node.subcells;
        } else if (bits == 0xF) {
            for (Quadrant q : kRing)
                seq.push_back(d_.subcell(node.cell, q));
        } else {
            int start = 0;
            while (!((bits & bit(kRing[start])) && !(bits & bit(kRing[(start + 3) % 4]))))
                ++start;
            std::vector<VertexId> run;
            for (int k = 0; k < 4 && (bits & bit(kRing[(start + k) % 4])); ++k)
                run.push_back(d_.subcell(node.cell, kRing[(start + k) % 4]));
            seq = run;
            for (int k = static_cast<int>(run.size()) - 2; k >= 1; --k)
                seq.push_back(run[k]);
        }
        int first = -1, prev = -1;
        for (VertexId v : seq) {
            int o = add(v, n);
            if (prev >= 0)
                next_[prev] = o;
            else
                first = o;
            prev = o;
        }
        next_[prev] = first;
    }

    int node_of_occ(int o) const { return g_.node_of[vertex_[o]]; }

    // x -> y inside the parent walk and p -> q inside the child's circle
    // become x -> q ... p -> y. No vertex gains a visit.
    bool try_swap(int a, int b) {
        for (int x : occ_of_node_[a]) {
            int y = next_[x];
            if (y == x || node_of_occ(y) != a)
                continue;
            for (int p : occ_of_node_[b]) {
                int q = next_[p];
                if (q == p)
                    continue;
                if (d_.adjacent(vertex_[x], vertex_[q]) && d_.adjacent(vertex_[p], vertex_[y])) {
                    next_[x] = q;
                    next_[p] = y;
                    return true;
                }
            }
        }
        return false;
    }

    // Detour through a single connecting edge: x -> b ... -> b -> x -> (old
    // successor of x). Revisits both endpoints.
    void splice(int a, int b) {
        for (int x : occ_of_node_[a]) {
            for (int p : occ_of_node_[b]) {
                if (!d_.adjacent(vertex_[x], vertex_[p]))
                    continue;
                const int succ = next_[x];
                const bool parent_single = succ == x;
                const bool child_single = next_[p] == p;
                int tail = p;
                if (!child_single) {
                    int pred = p;
                    while (next_[pred] != p)
                        pred = next_[pred];
                    tail = add(vertex_[p], b);
                    next_[pred] = tail;
                }
                if (parent_single) {
                    next_[tail] = x;
                } else {
                    int back = add(vertex_[x], a);
                    next_[tail] = back;
                    next_[back] = succ;
                }
                next_[x] = p;
                return;
            }
        }
        throw std::logic_error("spanning tree edge joins nonadjacent nodes");
    }

    const DecomposedGraph &d_;
    const AugmentedTerrainGraph &g_;
    std::vector<VertexId> vertex_;
    std::vector<int> next_;
    std::vector<std::vector<int>> occ_of_node_;
};

}  // namespace

CoveragePath circumnavigate(const DecomposedGraph &d, std::span<const VertexId> subgraph, VertexId root,
                            EdgeWeighting weighting) {
    if (std::find(subgraph.begin(), subgraph.end(), root) == subgraph.end())
        throw std::invalid_argument("root " + to_string(d.coord(root)) + " is not in the subgraph");
    AugmentedTerrainGraph g = build_augmented_terrain(d, subgraph, weighting);
    SpanningTree tree = minimum_spanning_tree(g, g.node_of[root]);

    std::vector<std::vector<int>> children(g.nodes.size());
    for (int n = 0; n < static_cast<int>(g.nodes.size()); ++n)
        if (tree.parent[n] >= 0)
            children[tree.parent[n]].push_back(n);

    WalkBuilder walk(d, g);
    // Preorder: a child is merged into its parent's walk before its own
    // children are merged into it.
    std::vector<int> stack{tree.root};
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        for (auto it = children[n].rbegin(); it != children[n].rend(); ++it)
            stack.push_back(*it);
        if (tree.parent[n] >= 0)
            walk.merge(tree.parent[n], n);
    }
    return CoveragePath(d, walk.extract(root));
}

CoveragePath estc_path(const DecomposedGraph &d, std::span<const VertexId> subgraph, VertexId root) {
    return circumnavigate(d, subgraph, root, EdgeWeighting::Prioritized);
}

CoveragePath full_stc_path(const DecomposedGraph &d, std::span<const VertexId> subgraph, VertexId root) {
    return circumnavigate(d, subgraph, root, EdgeWeighting::Uniform);
}

}  // namespace mcpp
