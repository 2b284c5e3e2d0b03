#include "support.hpp"

#include "mcpp/init.hpp"
#include "mcpp/local_search.hpp"

#include <doctest.h>

#include <cmath>

using namespace mcpp;
using testing::at;
using testing::decompose;

namespace {

std::vector<VertexId> ids(const DecomposedGraph &d, std::vector<std::pair<int, int>> cs) {
    std::vector<VertexId> out;
    for (auto [c, r] : cs)
        out.push_back(at(d, c, r));
    return out;
}

Solution solution_of(const Partition &p) { return initial_solution(p); }

// Robot 0 owns a region that doubles back on itself; robot 1 owns all of D.
struct UTurnFixture {
    DecomposedGraph d = decompose({"...", "..."});
    Partition partition;
    UTurnFixture() {
        auto region = ids(d, {{0, 0}, {1, 0}, {3, 0}, {4, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1},
                              {0, 2}, {1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {0, 3}, {1, 3}, {2, 3}});
        partition = Partition(d, ids(d, {{0, 2}, {1, 2}}), {region, d.vertices()});
    }
};

}  // namespace

TEST_SUITE("local-search") {

TEST_CASE("search parameters") {
    CHECK_NOTHROW(SearchParams{}.validate());
    CHECK_THROWS_AS(SearchParams::make(0, 100), std::invalid_argument);
    CHECK_THROWS_AS(SearchParams::make(10, 0), std::invalid_argument);
    CHECK_THROWS_AS(SearchParams::make(10, 10, 1.5), std::invalid_argument);
    SearchParams bad;
    bad.alpha = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("pool probabilities") {
    auto all = pool_probabilities({1, 1, 1}, {true, true, true});
    REQUIRE(all);
    for (double p : *all)
        CHECK(p == doctest::Approx(1.0 / 3.0));

    auto no_dedup = pool_probabilities({1, 1, 1}, {true, false, true});
    REQUIRE(no_dedup);
    CHECK((*no_dedup)[0] == doctest::Approx(0.5));
    CHECK((*no_dedup)[1] == 0.0);
    CHECK((*no_dedup)[2] == doctest::Approx(0.5));

    auto single = pool_probabilities({3, 1, 2}, {false, true, false});
    REQUIRE(single);
    CHECK((*single)[1] == 1.0);

    CHECK_FALSE(pool_probabilities({1, 1, 1}, {false, false, false}).has_value());
    Rng rng(1);
    CHECK_FALSE(select_pool({1, 1, 1}, {false, false, false}, rng).has_value());
    for (int k = 0; k < 50; ++k)
        CHECK(select_pool({1, 1, 1}, {false, false, true}, rng) == OperatorKind::Exchange);
}

TEST_CASE("pool weight update") {
    std::array<double, 3> p{1.0, 1.0, 1.0};
    update_pool_weight(p, OperatorKind::Dedup, 0.01, -5.0);
    CHECK(p[1] == doctest::Approx(0.99 + 0.05));
    CHECK(p[0] == 1.0);

    std::array<double, 3> q{1.0, 1.0, 1.0};
    update_pool_weight(q, OperatorKind::Grow, 0.01, 2.0);
    CHECK(q[0] == doctest::Approx(0.99));

    std::array<double, 3> r{1.0, 1.0, 1.0};
    update_pool_weight(r, OperatorKind::Grow, 0.0, -7.0);
    CHECK(r[0] == 1.0);
}

TEST_CASE("operator heuristics") {
    DecomposedGraph d = decompose({"..", ".."});
    auto cell = [&](int c, int r) {
        std::vector<VertexId> out;
        for (Quadrant q : {NW, NE, SW, SE})
            out.push_back(d.subcell(d.terrain().id({c, r}), q));
        return out;
    };
    auto both = cell(1, 0);
    auto first = cell(0, 0);
    first.insert(first.end(), both.begin(), both.end());
    Partition p(d, ids(d, {{0, 0}, {2, 0}, {0, 2}, {2, 2}}), {first, cell(1, 0), cell(0, 1), cell(1, 1)});
    const std::vector<double> costs{10.0, 10.0, 3.0, 3.0};

    const CellEdge lone = make_cell_edge(at(d, 0, 2), at(d, 1, 2));
    CHECK(p.count(lone.u) == 1);
    CHECK(heuristic(BoundaryOperator::grow(0, lone), costs, p) == doctest::Approx(-41.0));

    const CellEdge shared = make_cell_edge(at(d, 2, 0), at(d, 3, 0));
    CHECK(p.count(shared.u) == 2);
    CHECK(heuristic(BoundaryOperator::dedup(1, shared), costs, p) == doctest::Approx(42.0));
    CHECK(heuristic(BoundaryOperator::exchange(0, 1, shared), costs, p) == 0.0);
    CHECK(heuristic(BoundaryOperator::exchange(2, 0, shared), costs, p) == doctest::Approx(7.0));
}

TEST_CASE("operator sampling") {
    Rng rng(5);
    const std::vector<double> one{3.0};
    for (int k = 0; k < 20; ++k)
        CHECK(sample_operator(one, rng) == 0);
    CHECK_THROWS_AS(sample_operator(std::vector<double>{}, rng), std::invalid_argument);

    auto equal = softmax(std::vector<double>{2.0, 2.0});
    CHECK(equal[0] == doctest::Approx(0.5));

    auto third = softmax(std::vector<double>{0.0, std::log(3.0)});
    CHECK(third[0] == doctest::Approx(0.25));
    CHECK(third[1] == doctest::Approx(0.75));

    int hits = 0;
    const int draws = 20000;
    for (int k = 0; k < draws; ++k)
        hits += sample_operator(std::vector<double>{0.0, std::log(3.0)}, rng) == 1;
    CHECK(static_cast<double>(hits) / draws == doctest::Approx(0.75).epsilon(0.02));

    auto ordered = softmax(normalize_heuristics(std::vector<double>{-41.0, 42.0, 0.0}));
    CHECK(ordered[1] > ordered[2]);
    CHECK(ordered[2] > ordered[0]);
    auto flat = normalize_heuristics(std::vector<double>{5.0, 5.0});
    CHECK(flat[0] == 0.0);
    auto big = normalize_heuristics(std::vector<double>{-1e6, 1e6});
    CHECK(big[0] == doctest::Approx(-1.0));
    CHECK(big[1] == 0.0);
}

TEST_CASE("acceptance") {
    Rng rng(2);
    for (int k = 0; k < 100; ++k)
        CHECK(accept(-1.0, 1.0, 10.0, rng));
    CHECK(acceptance_probability(0.0, 1.0, 10.0) == 1.0);
    CHECK(acceptance_probability(5.0, 0.5, 10.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(acceptance_probability(5.0, 0.0, 10.0) == 0.0);
    CHECK(acceptance_probability(kRejected, 1.0, 10.0) == 0.0);
    CHECK(acceptance_probability(1.0, 1e-6, 10.0) < 1e-100);
}

TEST_CASE("temperature schedule") {
    for (int m : {1, 100, 3000, 12345}) {
        const double alpha = temperature_decay_for(m);
        CHECK(alpha == doctest::Approx(std::exp(std::log(0.2) / m)));
        double t = 1.0;
        for (int k = 0; k < m; ++k)
            t = temperature_step(t, alpha);
        CHECK(std::abs(t - 0.2) <= 1e-12);
    }
    double t = 1.0;
    for (int k = 0; k < 10; ++k)
        t = temperature_step(t, 1.0);
    CHECK(t == 1.0);
    CHECK(temperature_step(1.0, 0.0) == 0.0);
    CHECK(acceptance_probability(0.5, temperature_step(1.0, 0.0), 1.0) == 0.0);
}

TEST_CASE("delta evaluation") {
    // Robot 0 covers the whole 2x1 terrain; robot 1 only the east cell.
    DecomposedGraph d = decompose({".."});
    const std::vector<VertexId> east{at(d, 2, 0), at(d, 3, 0), at(d, 2, 1), at(d, 3, 1)};
    Partition p(d, {at(d, 0, 0), at(d, 3, 1)}, {d.vertices(), east});
    SearchState state(d, solution_of(p));
    REQUIRE(state.costs[0] > state.costs[1]);
    const Partition before = state.partition;
    const auto costs_before = state.costs;
    const double tau = state.makespan();

    bool improving = false;
    for (CellEdge e : removable_edges(state.partition, 0)) {
        if (!is_valid_dedup(state.partition, 0, e))
            continue;
        Evaluation eval = evaluate_delta(BoundaryOperator::dedup(0, e), state);
        auto shrunk = state.partition.vertices(0);
        std::erase(shrunk, e.u);
        std::erase(shrunk, e.v);
        const double after = std::max(estc_path(d, shrunk, state.partition.root(0)).cost(), state.costs[1]);
        CHECK(eval.delta == doctest::Approx(after - tau));
        improving = improving || eval.delta < 0.0;
        CHECK(state.partition == before);
        CHECK(state.costs == costs_before);
    }
    CHECK(improving);

    const CellEdge east_pair = make_cell_edge(at(d, 3, 0), at(d, 3, 1));
    REQUIRE(is_valid_dedup(state.partition, 0, east_pair));
    CHECK(evaluate_delta(BoundaryOperator::dedup(0, east_pair), state).delta < 0.0);

    // A stale operator is rejected without side effects.
    Evaluation stale = evaluate_delta(BoundaryOperator::grow(1, make_cell_edge(at(d, 2, 0), at(d, 3, 0))), state);
    CHECK(stale.delta == kRejected);
    CHECK(state.partition == before);
}

TEST_CASE("forced deduplication removes U-turns") {
    UTurnFixture f;
    SearchState state(f.d, solution_of(f.partition));
    REQUIRE(find_u_turn(state, 0).has_value());
    const double start = state.costs[0];
    while (auto e = find_u_turn(state, 0)) {
        const double cost = state.costs[0];
        state.partition.remove(0, e->u);
        state.partition.remove(0, e->v);
        state.replan(0);
        CHECK(state.costs[0] < cost);
        CHECK(state.partition.valid());
    }
    CHECK(state.costs[0] < start);

    SearchState fresh(f.d, solution_of(f.partition));
    CHECK(forced_deduplication(fresh) > 0);
    CHECK(fresh.partition.valid());
    CHECK(fresh.costs[0] < start);
    CHECK(forced_deduplication(fresh) == 0);
}

TEST_CASE("forced deduplication leaves duplicate-free partitions alone") {
    DecomposedGraph d = decompose({"...", "..."});
    const VertexId roots[] = {at(d, 0, 0), at(d, 5, 3)};
    Partition p = voronoi_partition(d, roots);
    REQUIRE(p.duplication_set().empty());
    SearchState state(d, solution_of(p));
    const Partition before = state.partition;
    CHECK(forced_deduplication(state) == 0);
    CHECK(state.partition == before);
}

TEST_CASE("search on trivial inputs returns the initial solution") {
    DecomposedGraph d = decompose({"..", ".."});
    const VertexId root[] = {at(d, 0, 0)};
    Solution initial = initial_solution(voronoi_partition(d, root));
    for (int m : {1, 50}) {
        Solution s = ls_mcpp(d, initial, SearchParams::make(m, 10));
        CHECK(s.makespan == initial.makespan);
        CHECK(s.paths == initial.paths);
        CHECK(s.iterations_run <= 1);
    }
}

TEST_CASE("invalid initial solutions are refused") {
    DecomposedGraph d = decompose({".."});
    const VertexId roots[] = {at(d, 0, 0), at(d, 3, 1)};
    Solution s = initial_solution(voronoi_partition(d, roots));
    s.subgraphs[1].clear();
    s.paths[1] = CoveragePath();
    CHECK_FALSE(check_solution(d, s).empty());
    CHECK_THROWS(ls_mcpp(d, s, SearchParams::make(10, 5)));
}

TEST_CASE("search improves or keeps the makespan and is deterministic") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        RandomInstanceSpec spec;
        spec.width = 6;
        spec.height = 6;
        spec.obstacle_density = 0.1;
        spec.incomplete_fraction = 0.2;
        spec.robots = 3;
        Instance inst = random_instance(spec, seed);
        const auto roots = inst.root_ids();
        Solution initial = initial_solution(greedy_tree_cover_init(inst.graph, roots));
        const SearchParams params = SearchParams::make(300, 30, 0.01, 0.2, seed);
        std::vector<IterationTrace> t1, t2;
        Solution a = ls_mcpp(inst.graph, initial, params, &t1);
        Solution b = ls_mcpp(inst.graph, initial, params, &t2);
        CHECK(a.makespan <= initial.makespan);
        CHECK(check_solution(inst.graph, a) == "");
        CHECK(a.paths == b.paths);
        CHECK(a.subgraphs == b.subgraphs);
        CHECK(t1 == t2);
        CHECK(a.makespan == doctest::Approx(makespan_of(a.paths)));
        CHECK(a.iteration_found <= a.iterations_run);
    }
}

}
