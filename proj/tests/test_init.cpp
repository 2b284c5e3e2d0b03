#include "support.hpp"

#include "mcpp/init.hpp"

#include <doctest.h>

using namespace mcpp;
using testing::at;
using testing::decompose;

TEST_SUITE("init") {

TEST_CASE("voronoi with one robot takes everything") {
    DecomposedGraph d = decompose({"..", ".@", ".."});
    const VertexId root[] = {at(d, 1, 1)};
    Partition p = voronoi_partition(d, root);
    CHECK(p.vertices(0) == d.vertices());
    CHECK(p.valid());
}

TEST_CASE("voronoi splits a symmetric pair evenly") {
    DecomposedGraph d = decompose({".."});
    const VertexId roots[] = {at(d, 0, 0), at(d, 3, 0)};
    Partition p = voronoi_partition(d, roots);
    CHECK(p.size(0) == 4);
    CHECK(p.size(1) == 4);
    CHECK(p.valid());
    CHECK(p.duplication_set().empty());
}

TEST_CASE("voronoi ties go to the lower robot index") {
    DecomposedGraph d = decompose({"."});
    // (1,0) and (0,1) are each one step from both roots.
    const VertexId roots[] = {at(d, 1, 1), at(d, 0, 0)};
    Partition p = voronoi_partition(d, roots);
    CHECK(p.contains(0, at(d, 1, 0)));
    CHECK(p.contains(0, at(d, 0, 1)));
    CHECK(p.size(1) == 1);
}

TEST_CASE("voronoi partitions are duplication-free and valid") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomInstanceSpec spec;
        spec.width = 5;
        spec.height = 4;
        spec.obstacle_density = 0.1;
        spec.incomplete_fraction = seed % 2 ? 0.3 : 0.0;
        spec.robots = 3;
        Instance inst = random_instance(spec, seed);
        const auto roots = inst.root_ids();
        Partition p = voronoi_partition(inst.graph, roots);
        CHECK(p.duplication_set().empty());
        CHECK(p.check_invariants() == "");
    }
}

TEST_CASE("greedy tree cover splits a square between opposite corners") {
    DecomposedGraph d = decompose({"..", ".."});
    const VertexId roots[] = {at(d, 0, 0), at(d, 3, 3)};
    Partition p = greedy_tree_cover_init(d, roots);
    CHECK(p.size(0) == 8);
    CHECK(p.size(1) == 8);
    CHECK(p.valid());
}

TEST_CASE("greedy tree cover with one root per cell keeps each robot home") {
    DecomposedGraph d = decompose({"..", ".."});
    const VertexId roots[] = {at(d, 0, 0), at(d, 2, 0), at(d, 1, 3), at(d, 3, 2)};
    Partition p = greedy_tree_cover_init(d, roots);
    for (int i = 0; i < 4; ++i) {
        CHECK(p.size(i) == 4);
        CHECK(p.holds_cell(i, d.cell_of(roots[i])));
    }
}

TEST_CASE("greedy tree cover produces valid partitions") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomInstanceSpec spec;
        spec.width = 6;
        spec.height = 5;
        spec.obstacle_density = 0.15;
        spec.weighted = seed % 2 == 0;
        spec.incomplete_fraction = seed % 3 ? 0.25 : 0.0;
        spec.robots = 1 + static_cast<int>(seed % 4);
        Instance inst = random_instance(spec, 100 + seed);
        const auto roots = inst.root_ids();
        Partition p = greedy_tree_cover_init(inst.graph, roots);
        CHECK(p.check_invariants() == "");
    }
}

TEST_CASE("initial solution of a two-robot pair") {
    DecomposedGraph d = decompose({".."});
    const VertexId roots[] = {at(d, 0, 0), at(d, 3, 0)};
    Solution s = initial_solution(voronoi_partition(d, roots));
    REQUIRE(s.paths.size() == 2);
    CHECK(s.makespan == doctest::Approx(1.0));
    CHECK(check_solution(d, s) == "");
    CHECK(s.paths[0].root() == roots[0]);
    CHECK(s.paths[1].root() == roots[1]);
}

TEST_CASE("init errors") {
    DecomposedGraph d = decompose({".."});
    const VertexId same[] = {at(d, 0, 0), at(d, 0, 0)};
    CHECK_THROWS_AS(voronoi_partition(d, same), InstanceError);
    CHECK_THROWS_AS(greedy_tree_cover_init(d, same), InstanceError);
    CHECK_THROWS_AS(voronoi_partition(d, std::span<const VertexId>{}), InstanceError);
    CHECK(parse_init_kind("vor") == InitKind::Voronoi);
    CHECK(parse_init_kind("greedy") == InitKind::GreedyTreeCover);
    CHECK_THROWS(parse_init_kind("nope"));
}

}
