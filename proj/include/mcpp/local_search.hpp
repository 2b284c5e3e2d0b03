#pragma once

#include "mcpp/estc.hpp"
#include "mcpp/operator_pools.hpp"
#include "mcpp/partition.hpp"
#include "mcpp/rng.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mcpp {

/// alpha such that the temperature falls from 1 to `final_temperature` over
/// `iterations` multiplicative steps.
double temperature_decay_for(int iterations, double final_temperature = 0.2);

struct SearchParams {
    int max_iterations = 3000;   // M
    int dedup_period = 100;      // S
    double alpha = temperature_decay_for(3000);
    double gamma = 0.01;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless M, S >= 1 and alpha, gamma in [0,1].
    void validate() const;
    static SearchParams make(int iterations, int dedup_period, double gamma = 0.01, double final_temperature = 0.2,
                             std::uint64_t seed = 0);
};

/// Per-robot coverage walks on a partition of D.
struct Solution {
    std::vector<VertexId> roots;
    std::vector<std::vector<VertexId>> subgraphs;
    std::vector<CoveragePath> paths;
    double makespan = 0.0;
    int iteration_found = 0;
    int iterations_run = 0;
    std::uint64_t seed = 0;

    std::vector<double> costs() const;
};

/// Makespan of a set of walks.
double makespan_of(std::span<const CoveragePath> paths);

/// Empty when the walks jointly cover D, each walk starts at its root and
/// stays in its subgraph, and the subgraphs form a valid partition.
std::string check_solution(const DecomposedGraph &d, const Solution &s);

/// Mutable search state: partition, per-robot walks, and operator pools.
struct SearchState {
    SearchState(const DecomposedGraph &d, const Solution &initial, Execution exec = Execution::Parallel);

    const DecomposedGraph *graph;
    Partition partition;
    std::vector<CoveragePath> paths;
    std::vector<double> costs;
    OperatorPools pools;

    double makespan() const;
    void replan(int i);
    Solution snapshot(int iteration) const;
};

/// Probability of each pool under softmax(p) renormalized over nonempty
/// pools; nullopt when every pool is empty.
std::optional<std::array<double, 3>> pool_probabilities(const std::array<double, 3> &p,
                                                        const std::array<bool, 3> &nonempty);
std::optional<OperatorKind> select_pool(const std::array<double, 3> &p, const std::array<bool, 3> &nonempty, Rng &rng);

/// p[O] <- (1-gamma) p[O] + gamma max(-delta, 0)
void update_pool_weight(std::array<double, 3> &p, OperatorKind pool, double gamma, double delta);

/// h(o): grow -k c_i - (n_u+n_v)/2; dedup k c_i + (n_u+n_v)/2; exchange c_j - c_i.
double heuristic(const BoundaryOperator &op, std::span<const double> costs, const Partition &p);

/// Shift by the maximum and scale by the spread (max - min) when nonzero.
std::vector<double> normalize_heuristics(std::span<const double> h);
/// Exact softmax (max-shifted).
std::vector<double> softmax(std::span<const double> values);
/// Index drawn from softmax(h). Throws std::invalid_argument on an empty pool.
std::size_t sample_operator(std::span<const double> h, Rng &rng);

inline constexpr double kRejected = std::numeric_limits<double>::infinity();

struct Evaluation {
    double delta = kRejected;
    std::vector<std::pair<int, CoveragePath>> replanned;
};

/// Tentatively applies op, replans only the touched robots, and rolls back.
/// Invalid operators yield delta = +inf.
Evaluation evaluate_delta(const BoundaryOperator &op, SearchState &state);
/// Applies op and installs the replanned walks from `eval`.
void commit(const BoundaryOperator &op, Evaluation &&eval, SearchState &state);

/// Acceptance probability of a nonnegative delta: exp(-(delta/tau0)/t).
double acceptance_probability(double delta, double t, double tau0);
bool accept(double delta, double t, double tau0, Rng &rng);

/// First U-turn p -> u -> v -> q in robot i's walk (with (p,q) also walked and
/// u, v duplicated) whose removal keeps D_i connected.
std::optional<CellEdge> find_u_turn(const SearchState &state, int i);

/// Removes U-turns, then exhaustively applies valid dedup operators, robot by
/// robot in decreasing cost order, until neither finds anything. Returns the
/// number of removed vertex pairs.
int forced_deduplication(SearchState &state);

inline double temperature_step(double t, double alpha) { return alpha * t; }

struct IterationTrace {
    int iteration = 0;
    int pool = -1;  // OperatorKind index, -1 when nothing was sampled
    OperatorKind kind = OperatorKind::Grow;
    double delta = 0.0;
    bool accepted = false;
    double makespan = 0.0;
    bool operator==(const IterationTrace &) const = default;
};

/// The local search. Returns the best solution seen; its makespan never
/// exceeds the initial one.
Solution ls_mcpp(const DecomposedGraph &d, const Solution &initial, const SearchParams &params,
                 std::vector<IterationTrace> *trace = nullptr);

}  // namespace mcpp
