#include "support.hpp"

#include "mcpp/estc.hpp"
#include "mcpp/rng.hpp"

#include <doctest.h>

#include <set>

using namespace mcpp;
using testing::at;
using testing::decompose;
using testing::terrain;

namespace {

int repeats(const CoveragePath &p) {
    return static_cast<int>(p.length()) -
           static_cast<int>(std::set<VertexId>(p.vertices().begin(), p.vertices().end()).size());
}

AugmentedTerrainGraph abstract_graph(int n, std::vector<AugmentedEdge> edges) {
    AugmentedTerrainGraph g;
    for (int i = 0; i < n; ++i)
        g.nodes.push_back({i, {i}, true});
    g.edges = std::move(edges);
    return g;
}

// Random connected subgraph of D grown from a seed vertex.
std::vector<VertexId> random_region(const DecomposedGraph &d, Rng &rng, std::size_t target) {
    std::vector<VertexId> region{d.vertices()[rng.below(d.vertices().size())]};
    std::vector<std::uint8_t> in(static_cast<std::size_t>(d.slot_count()), 0);
    in[region[0]] = 1;
    while (region.size() < target) {
        std::vector<VertexId> frontier;
        for (VertexId v : region)
            for (VertexId u : d.neighbors(v))
                if (!in[u])
                    frontier.push_back(u);
        if (frontier.empty())
            break;
        VertexId pick = frontier[rng.below(frontier.size())];
        in[pick] = 1;
        region.push_back(pick);
    }
    std::sort(region.begin(), region.end());
    return region;
}

}  // namespace

TEST_SUITE("estc") {

TEST_CASE("augmented graph of a complete terrain keeps the original edges and weights") {
    TerrainGraph g = terrain({"..", ".."});
    g.set_edge_weight({0, 0}, {1, 0}, 2.5);
    DecomposedGraph d = build_decomposed_graph(g);
    auto aug = build_augmented_terrain(d, d.vertices());
    REQUIRE(aug.nodes.size() == 4);
    REQUIRE(aug.edges.size() == 4);
    for (const auto &e : aug.edges) {
        auto w = g.edge_weight(g.coord(aug.nodes[e.a].cell), g.coord(aug.nodes[e.b].cell));
        REQUIRE(w.has_value());
        CHECK(e.weight == *w);
    }
}

TEST_CASE("a diagonal pair splits into two nonadjacent nodes") {
    // Centre cell keeps only its NW and SE subcells.
    DecomposedGraph d = decompose({"...", "...", "..."}, {{3, 2}, {2, 3}});
    auto aug = build_augmented_terrain(d, d.vertices());
    const CellId centre = d.terrain().id({1, 1});
    int centre_nodes = 0;
    for (const auto &n : aug.nodes)
        centre_nodes += n.cell == centre;
    CHECK(centre_nodes == 2);
    const int nw = aug.node_of[at(d, 2, 2)];
    const int se = aug.node_of[at(d, 3, 3)];
    CHECK(nw != se);
    for (const auto &e : aug.edges)
        CHECK_FALSE(((e.a == nw && e.b == se) || (e.a == se && e.b == nw)));
}

TEST_CASE("manipulated weight between an incomplete and a complete vertex") {
    // (1,1) and (1,2) both have degree 4; (1,1) loses its NW subcell.
    DecomposedGraph d = decompose({"...", "...", "...", "..."}, {{2, 2}});
    auto aug = build_augmented_terrain(d, d.vertices());
    const int a = aug.node_of[at(d, 3, 3)];
    const int b = aug.node_of[at(d, 2, 4)];
    bool found = false;
    for (const auto &e : aug.edges)
        if ((e.a == std::min(a, b)) && (e.b == std::max(a, b))) {
            CHECK(e.weight == doctest::Approx(1.0 * 0.5 * (4.0 + 4.0)));
            found = true;
        }
    CHECK(found);
}

TEST_CASE("minimum spanning trees") {
    auto single = minimum_spanning_tree(abstract_graph(1, {}), 0);
    CHECK(single.weight == 0.0);
    CHECK(single.edges.empty());

    auto path = minimum_spanning_tree(abstract_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}}), 0);
    CHECK(path.weight == 3.0);
    CHECK(path.edges.size() == 2);

    auto cycle = minimum_spanning_tree(abstract_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 5.0}}), 0);
    CHECK(cycle.weight == 3.0);
    for (const auto &e : cycle.edges)
        CHECK(e.weight != 5.0);
    CHECK(cycle.parent[0] == -1);

    CHECK_THROWS_AS(minimum_spanning_tree(abstract_graph(2, {}), 0), std::invalid_argument);
}

TEST_CASE("mst ties break on node ids") {
    auto a = minimum_spanning_tree(abstract_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}}), 0);
    REQUIRE(a.edges.size() == 3);
    CHECK(a.edges[0].a == 0);
    CHECK(a.edges[0].b == 1);
    for (const auto &e : a.edges)
        CHECK_FALSE((e.a == 2 && e.b == 3));
}

TEST_CASE("single cell walk is a clockwise 4-cycle") {
    DecomposedGraph d = decompose({"."});
    auto p = estc_path(d, d.vertices(), at(d, 0, 0));
    CHECK(p.vertices() == std::vector<VertexId>{at(d, 0, 0), at(d, 1, 0), at(d, 1, 1), at(d, 0, 1)});
    CHECK(p.cost() == 0.0);
    CHECK(full_stc_path(d, d.vertices(), at(d, 0, 0)) == p);
}

TEST_CASE("2x1 terrain walk visits 8 subcells once at optimal cost") {
    DecomposedGraph d = decompose({".."});
    for (VertexId root : d.vertices()) {
        auto p = estc_path(d, d.vertices(), root);
        CHECK(p.length() == 8);
        CHECK(p.root() == root);
        CHECK(p.cost() == doctest::Approx(2.0));
        CHECK(p.cost() == doctest::Approx(testing::held_karp_cover(d, d.vertices(), root)));
        CHECK(p.cost() == doctest::Approx(testing::walk_cost(d, p.vertices())));
    }
}

TEST_CASE("estc beats full-stc on an incomplete instance") {
    DecomposedGraph d = decompose({"...", "...", "..."}, {{1, 1}, {0, 4}, {3, 4}, {4, 4}, {3, 5}});
    const VertexId root = at(d, 5, 1);
    auto e = estc_path(d, d.vertices(), root);
    auto f = full_stc_path(d, d.vertices(), root);
    CHECK(repeats(e) < repeats(f));
    CHECK(e.cost() < f.cost());
    CHECK(std::set<VertexId>(e.vertices().begin(), e.vertices().end()).size() == d.vertices().size());
    CHECK(std::set<VertexId>(f.vertices().begin(), f.vertices().end()).size() == d.vertices().size());
}

TEST_CASE("full-stc matches estc on complete uniform terrain") {
    DecomposedGraph d = decompose({"...", "..@", "..."});
    for (VertexId root : {at(d, 0, 0), at(d, 3, 2), at(d, 5, 5)}) {
        auto e = estc_path(d, d.vertices(), root);
        auto f = full_stc_path(d, d.vertices(), root);
        CHECK(e.cost() == doctest::Approx(f.cost()));
        CHECK(f.length() == d.vertices().size());
    }
}

TEST_CASE("coverage, exactly-once and determinism on random subgraphs") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        RandomInstanceSpec spec;
        spec.width = 2 + static_cast<int>(rng.below(5));
        spec.height = 2 + static_cast<int>(rng.below(5));
        spec.obstacle_density = 0.15;
        spec.weighted = trial % 2 == 0;
        spec.incomplete_fraction = trial % 3 == 0 ? 0.0 : 0.3;
        spec.robots = 1;
        Instance inst = random_instance(spec, 1000 + trial);
        const DecomposedGraph &d = inst.graph;
        auto region = random_region(d, rng, 1 + rng.below(d.vertices().size()));
        const VertexId root = region[rng.below(region.size())];
        auto p = estc_path(d, region, root);
        CHECK(p.root() == root);
        CHECK(std::set<VertexId>(p.vertices().begin(), p.vertices().end()) ==
              std::set<VertexId>(region.begin(), region.end()));
        auto in_region = make_mask(d, region);
        for (VertexId v : p.vertices())
            CHECK(in_region[v]);
        CHECK(p.cost() == doctest::Approx(testing::walk_cost(d, p.vertices())));
        CHECK(estc_path(d, region, root) == p);

        auto whole = estc_path(d, d.vertices(), inst.root_ids()[0]);
        if (is_complete_graph(d))
            CHECK(whole.length() == d.vertices().size());
    }
}

TEST_CASE("estc errors") {
    DecomposedGraph d = decompose({".."});
    std::vector<VertexId> west{at(d, 0, 0), at(d, 1, 0), at(d, 0, 1), at(d, 1, 1)};
    CHECK_THROWS_AS(estc_path(d, west, at(d, 2, 0)), std::invalid_argument);
    std::vector<VertexId> apart{at(d, 0, 0), at(d, 3, 1)};
    CHECK_THROWS_AS(estc_path(d, apart, at(d, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(CoveragePath(d, {at(d, 0, 0), at(d, 1, 1)}), std::logic_error);
}

}
