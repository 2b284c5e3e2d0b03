#pragma once

#include "mcpp/instance.hpp"
#include "mcpp/local_search.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcpp {

/// One solver run. A failed run keeps its error text and no makespan.
struct RunRecord {
    std::string instance;
    std::string algorithm;
    std::uint64_t seed = 0;
    double makespan = 0.0;
    double initial_makespan = 0.0;
    double runtime_ms = 0.0;
    int iterations = 0;
    std::string error;

    bool ok() const { return error.empty(); }
};

struct Summary {
    std::string instance;
    std::string algorithm;
    int runs = 0;
    int failures = 0;
    double makespan_mean = 0.0;
    double makespan_std = 0.0;
    double runtime_mean = 0.0;
    double runtime_std = 0.0;
};

/// Sample mean and standard deviation (n-1); std is 0 for fewer than two values.
std::pair<double, double> mean_std(std::span<const double> values);

/// Records ordered by (instance, algorithm, seed).
void sort_records(std::vector<RunRecord> &records);
/// One summary per (instance, algorithm), over successful runs.
std::vector<Summary> summarize(std::span<const RunRecord> records);

/// CSV: instance,algorithm,seed,makespan,runtime_ms,iterations,makespan_std,
/// runtime_ms_std,error. Data rows come first (sorted), then one aggregate row
/// per group with seed "agg" and means in the makespan/runtime columns.
/// Throws std::invalid_argument on an empty record set.
std::string write_results_csv(std::vector<RunRecord> records);

/// Text table: one block per instance, algorithms as columns, makespan
/// "mean±std" on the first line and runtime on the second.
std::string write_report(std::vector<RunRecord> records);

/// Shortest round-trip decimal form of x.
std::string format_number(double x);

/// Writes `text` to `path`, creating parent directories; throws on failure.
void write_text_file(const std::filesystem::path &path, std::string_view text);

/// JSON of a solution as subcell coordinates (roots, subgraphs, walks).
std::string serialize_solution(const DecomposedGraph &d, const Solution &s);
Solution parse_solution(const DecomposedGraph &d, std::string_view text);

std::string write_trace_csv(std::span<const IterationTrace> trace);

}  // namespace mcpp
