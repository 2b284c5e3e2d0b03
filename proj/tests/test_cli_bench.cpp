#include "support.hpp"

#include "mcpp/bench.hpp"
#include "mcpp/init.hpp"
#include "mcpp/oracle.hpp"
#include "mcpp/results.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mcpp;
using testing::at;
using testing::decompose;

namespace {

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string &cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Instance tiny(std::uint64_t seed) {
    RandomInstanceSpec spec;
    spec.width = 3;
    spec.height = 3;
    spec.obstacle_density = 0.1;
    spec.incomplete_fraction = 0.2;
    spec.robots = 2;
    return random_instance(spec, seed, "tiny" + std::to_string(seed));
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("single cover oracle") {
    DecomposedGraph one = decompose({"."});
    CHECK(oracle_single_cover(one, at(one, 0, 0)) == 0.0);

    DecomposedGraph pair = decompose({".."});
    CHECK(oracle_single_cover(pair, at(pair, 0, 0)) == doctest::Approx(2.0));

    WeightedGraph path(3);
    path.add_edge(0, 1, 1.0);
    path.add_edge(1, 2, 1.0);
    CHECK(oracle_single_cover(path, 0) == doctest::Approx(4.0));
    CHECK(oracle_single_cover(path, 1) == doctest::Approx(4.0));

    WeightedGraph lone(1);
    CHECK(oracle_single_cover(lone, 0) == 0.0);
}

TEST_CASE("single cover oracle agrees with held-karp") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        RandomInstanceSpec spec;
        spec.width = 2;
        spec.height = 2;
        spec.weighted = true;
        spec.incomplete_fraction = seed % 2 ? 0.5 : 0.0;
        spec.robots = 1;
        Instance inst = random_instance(spec, seed);
        if (inst.graph.vertex_count() > kSingleCoverLimit)
            continue;
        const VertexId root = inst.root_ids()[0];
        CHECK(oracle_single_cover(inst.graph, root) ==
              doctest::Approx(testing::held_karp_cover(inst.graph, inst.graph.vertices(), root)));
    }
}

TEST_CASE("mcpp oracle") {
    DecomposedGraph pair = decompose({".."});

    DecomposedGraph cell = decompose({"."});
    const VertexId r1[] = {at(cell, 1, 1)};
    CHECK(oracle_mcpp(cell, r1) == oracle_single_cover(cell, r1[0]));
    const VertexId p1[] = {at(pair, 2, 1)};
    CHECK(oracle_mcpp(pair, p1) == doctest::Approx(oracle_single_cover(pair, p1[0])));

    // Two robots on a 2x1 terrain: the oracle splits the cells evenly.
    const VertexId r2[] = {at(pair, 0, 0), at(pair, 3, 0)};
    CHECK(oracle_mcpp(pair, r2) == doctest::Approx(1.0));
}

TEST_CASE("oracle finds walks that tree covers miss") {
    // Both roots in the west cell of a 2x1 terrain. Any tree cover hands the
    // east cell to one robot whose walk then costs 2; splitting subcells
    // across the cell boundary does better.
    DecomposedGraph pair = decompose({".."});
    const VertexId roots[] = {at(pair, 0, 0), at(pair, 1, 0)};
    CHECK(oracle_mcpp(pair, roots) == doctest::Approx(1.5));
    CHECK(oracle_mcpp(pair, roots) < 2.0);
}

TEST_CASE("oracle refuses large inputs") {
    DecomposedGraph big = decompose({"...", "..."});
    CHECK_THROWS_AS(oracle_single_cover(big, at(big, 0, 0)), OracleRefusal);
    DecomposedGraph mid = decompose({"...", "..."}, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {3, 0},
                                                   {2, 1}, {3, 1}, {4, 0}, {5, 0}, {4, 1}});
    const VertexId roots[] = {at(mid, 0, 2), at(mid, 5, 3)};
    REQUIRE(mid.vertex_count() > kMcppVertexLimit);
    CHECK_THROWS_AS(oracle_mcpp(mid, roots), OracleRefusal);
    DecomposedGraph cell = decompose({"."});
    const VertexId many[] = {0, 1, 2, 3};
    CHECK_THROWS_AS(oracle_mcpp(cell, many), OracleRefusal);
}

}

TEST_SUITE("cli-bench") {

TEST_CASE("benchmark over twelve seeds") {
    BenchConfig cfg;
    cfg.algorithms = {Algorithm::LsGreedy};
    cfg.iterations = 50;
    cfg.dedup_period = 10;
    auto records = run_benchmark({tiny(1)}, cfg);
    CHECK(records.size() == 12);
    for (std::size_t k = 0; k < records.size(); ++k) {
        CHECK(records[k].seed == k);
        CHECK(records[k].ok());
        CHECK(records[k].makespan <= records[k].initial_makespan + 1e-9);
    }
    auto rows = write_results_csv(records);
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 1 + 12 + 1);
}

TEST_CASE("paired algorithms share instances and seeds") {
    BenchConfig cfg;
    cfg.algorithms = {Algorithm::Greedy, Algorithm::LsGreedy, Algorithm::Vor, Algorithm::LsVor};
    cfg.seeds = {0, 1};
    cfg.iterations = 30;
    cfg.dedup_period = 10;
    auto records = run_benchmark({tiny(2), tiny(3)}, cfg);
    CHECK(records.size() == 2 * 4 * 2);
    for (const auto &r : records) {
        CHECK(r.ok());
        if (r.algorithm == "ls-greedy" || r.algorithm == "ls-vor")
            CHECK(r.makespan <= r.initial_makespan + 1e-9);
    }

    BenchConfig serial = cfg;
    serial.exec = Execution::Serial;
    auto again = run_benchmark({tiny(2), tiny(3)}, serial);
    REQUIRE(again.size() == records.size());
    for (std::size_t k = 0; k < again.size(); ++k)
        CHECK(again[k].makespan == records[k].makespan);
}

TEST_CASE("benchmark errors") {
    CHECK_THROWS_AS(run_benchmark({}, BenchConfig{}), std::invalid_argument);
    CHECK(parse_algorithm("ls-vor") == Algorithm::LsVor);
    CHECK_THROWS(parse_algorithm("bogus"));
    CHECK(std::string(to_string(Algorithm::LsGreedy)) == "ls-greedy");
}

TEST_CASE("cli solve is deterministic") {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "mcpp_cli_test";
    std::filesystem::create_directories(dir);
    const std::string cli = MCPP_CLI_PATH;
    const std::string sample = MCPP_SAMPLE_PATH;
    const auto a = dir / "a.csv", b = dir / "b.csv", svg = dir / "a.svg";
    CHECK(run(cli + " solve " + sample + " --iters 200 --seed 3 --out " + a.string() + " --svg " + svg.string()) ==
          0);
    CHECK(run(cli + " solve " + sample + " --iters 200 --seed 3 --out " + b.string()) == 0);
    const std::string first = slurp(a), second = slurp(b);
    CHECK_FALSE(first.empty());
    auto strip_runtime = [](const std::string &csv) {
        // runtime_ms is the fifth column; drop it before comparing.
        std::stringstream in(csv), out;
        std::string line;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::stringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                cells.push_back(cell);
            for (std::size_t k = 0; k < cells.size(); ++k)
                if (k != 4 && k != 7)
                    out << cells[k] << ',';
            out << '\n';
        }
        return out.str();
    };
    CHECK(strip_runtime(first) == strip_runtime(second));
    CHECK(slurp(svg).find("<svg") != std::string::npos);

    CHECK(run(cli + " solve " + (dir / "missing.json").string()) != 0);
    CHECK(run(cli + " solve " + sample + " --iters 0") != 0);
    CHECK(run(cli + " frobnicate") != 0);
    std::filesystem::remove_all(dir);
}

}
