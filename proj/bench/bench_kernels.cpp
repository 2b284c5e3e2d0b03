// Serial vs OpenMP timings for the pool kernels and whole-benchmark runs.
#include "mcpp/bench.hpp"
#include "mcpp/init.hpp"
#include "mcpp/instance.hpp"
#include "mcpp/operator_pools.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mcpp;

namespace {

template <class F>
double time_ms(F &&f, int reps) {
    auto start = std::chrono::steady_clock::now();
    for (int k = 0; k < reps; ++k)
        f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count() / reps;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif
    RandomInstanceSpec spec;
    spec.width = 32;
    spec.height = 32;
    spec.obstacle_density = 0.1;
    spec.incomplete_fraction = 0.3;
    spec.robots = 8;
    Instance inst = random_instance(spec, 7, "bench32");
    const auto roots = inst.root_ids();
    Partition p = greedy_tree_cover_init(inst.graph, roots);
    Solution s = initial_solution(p);
    const auto costs = s.costs();

    for (Execution exec : {Execution::Serial, Execution::Parallel}) {
        const char *name = exec == Execution::Serial ? "serial" : "parallel";
        double removable = time_ms(
            [&] {
                for (int i = 0; i < p.robot_count(); ++i)
                    (void)removable_edges(p, i, exec);
            },
            20);
        double pools = time_ms([&] { OperatorPools pools(p, costs, exec); }, 20);
        std::printf("%-8s removable_edges %.3f ms  pool build %.3f ms\n", name, removable, pools);
    }

    std::vector<Instance> instances;
    for (std::uint64_t k = 0; k < 3; ++k) {
        RandomInstanceSpec small = spec;
        small.width = small.height = 12;
        small.robots = 4;
        instances.push_back(random_instance(small, 100 + k, "b" + std::to_string(k)));
    }
    BenchConfig cfg;
    cfg.algorithms = {Algorithm::LsGreedy};
    cfg.seeds = {0, 1, 2, 3};
    cfg.iterations = 300;
    for (Execution exec : {Execution::Serial, Execution::Parallel}) {
        cfg.exec = exec;
        double ms = time_ms([&] { (void)run_benchmark(instances, cfg); }, 1);
        std::printf("%-8s run_benchmark %.1f ms\n", exec == Execution::Serial ? "serial" : "parallel", ms);
    }
}
