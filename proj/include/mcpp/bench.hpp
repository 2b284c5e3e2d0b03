#pragma once

#include "mcpp/init.hpp"
#include "mcpp/instance.hpp"
#include "mcpp/results.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mcpp {

enum class Algorithm { Vor, Greedy, LsVor, LsGreedy };

/// "vor", "greedy", "ls-vor", "ls-greedy".
const char *to_string(Algorithm a);
Algorithm parse_algorithm(const std::string &name);

struct BenchConfig {
    std::vector<Algorithm> algorithms{Algorithm::Greedy, Algorithm::LsGreedy};
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    int iterations = 3000;
    int dedup_period = 100;
    double gamma = 0.01;
    double final_temperature = 0.2;
    /// Parallel schedules independent runs on OpenMP threads.
    Execution exec = Execution::Parallel;
};

/// Search parameters for an instance: config values, then the instance's
/// own overrides.
SearchParams params_for(const Instance &inst, const BenchConfig &cfg, std::uint64_t seed);

/// One run; exceptions become a failed record. Runtime covers initialization
/// and search, not parsing.
RunRecord run_single(const Instance &inst, Algorithm algorithm, std::uint64_t seed, const BenchConfig &cfg,
                     Solution *solution = nullptr);

/// Every (instance, algorithm, seed) triple, sorted. Throws
/// std::invalid_argument when there are no instances.
std::vector<RunRecord> run_benchmark(const std::vector<Instance> &instances, const BenchConfig &cfg);

}  // namespace mcpp
