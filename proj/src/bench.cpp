#include "mcpp/bench.hpp"

#include <chrono>
#include <stdexcept>

namespace mcpp {

const char *to_string(Algorithm a) {
    switch (a) {
    case Algorithm::Vor:
        return "vor";
    case Algorithm::Greedy:
        return "greedy";
    case Algorithm::LsVor:
        return "ls-vor";
    case Algorithm::LsGreedy:
        return "ls-greedy";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string &name) {
    for (Algorithm a : {Algorithm::Vor, Algorithm::Greedy, Algorithm::LsVor, Algorithm::LsGreedy})
        if (name == to_string(a))
            return a;
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected vor, greedy, ls-vor or ls-greedy)");
}

SearchParams params_for(const Instance &inst, const BenchConfig &cfg, std::uint64_t seed) {
    const auto &o = inst.params;
    return SearchParams::make(o.iterations.value_or(cfg.iterations), o.dedup_period.value_or(cfg.dedup_period),
                              o.gamma.value_or(cfg.gamma), o.final_temperature.value_or(cfg.final_temperature), seed);
}

RunRecord run_single(const Instance &inst, Algorithm algorithm, std::uint64_t seed, const BenchConfig &cfg,
                     Solution *solution) {
    RunRecord rec;
    rec.instance = inst.name;
    rec.algorithm = to_string(algorithm);
    rec.seed = seed;
    try {
        const auto start = std::chrono::steady_clock::now();
        const InitKind init =
            algorithm == Algorithm::Vor || algorithm == Algorithm::LsVor ? InitKind::Voronoi : InitKind::GreedyTreeCover;
        const auto roots = inst.root_ids();
        Solution s = initial_solution(make_initial_partition(init, inst.graph, roots));
        s.seed = seed;
        rec.initial_makespan = s.makespan;
        if (algorithm == Algorithm::LsVor || algorithm == Algorithm::LsGreedy)
            s = ls_mcpp(inst.graph, s, params_for(inst, cfg, seed));
        const auto stop = std::chrono::steady_clock::now();
        rec.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        rec.makespan = s.makespan;
        rec.iterations = s.iterations_run;
        if (solution)
            *solution = std::move(s);
    } catch (const std::exception &e) {
        rec.error = e.what();
        if (rec.error.empty())
            rec.error = "unknown failure";
    }
    return rec;
}

std::vector<RunRecord> run_benchmark(const std::vector<Instance> &instances, const BenchConfig &cfg) {
    if (instances.empty())
        throw std::invalid_argument("benchmark needs at least one instance");
    if (cfg.algorithms.empty() || cfg.seeds.empty())
        throw std::invalid_argument("benchmark needs at least one algorithm and one seed");
    struct Job {
        std::size_t instance;
        Algorithm algorithm;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (Algorithm a : cfg.algorithms)
            for (std::uint64_t s : cfg.seeds)
                jobs.push_back({i, a, s});
    std::vector<RunRecord> records(jobs.size());
    const auto n = static_cast<long>(jobs.size());
    if (cfg.exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long j = 0; j < n; ++j)
            records[j] = run_single(instances[jobs[j].instance], jobs[j].algorithm, jobs[j].seed, cfg);
    } else {
        for (long j = 0; j < n; ++j)
            records[j] = run_single(instances[jobs[j].instance], jobs[j].algorithm, jobs[j].seed, cfg);
    }
    sort_records(records);
    return records;
}

}  // namespace mcpp
