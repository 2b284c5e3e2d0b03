#include "mcpp/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace mcpp {

double temperature_decay_for(int iterations, double final_temperature) {
    if (iterations < 1)
        throw std::invalid_argument("iteration count must be positive");
    if (!(final_temperature > 0.0 && final_temperature <= 1.0))
        throw std::invalid_argument("final temperature must lie in (0, 1]");
    return std::exp(std::log(final_temperature) / iterations);
}

void SearchParams::validate() const {
    if (max_iterations < 1)
        throw std::invalid_argument("max iterations must be >= 1");
    if (dedup_period < 1)
        throw std::invalid_argument("forced deduplication period must be >= 1");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("temperature decay must lie in [0, 1]");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("pool weight decay must lie in [0, 1]");
}

SearchParams SearchParams::make(int iterations, int dedup_period, double gamma, double final_temperature,
                                std::uint64_t seed) {
    SearchParams p;
    p.max_iterations = iterations;
    p.dedup_period = dedup_period;
    p.gamma = gamma;
    p.alpha = temperature_decay_for(iterations, final_temperature);
    p.seed = seed;
    p.validate();
    return p;
}

std::vector<double> Solution::costs() const {
    std::vector<double> out;
    for (const auto &p : paths)
        out.push_back(p.cost());
    return out;
}

double makespan_of(std::span<const CoveragePath> paths) {
    double m = 0.0;
    for (const auto &p : paths)
        m = std::max(m, p.cost());
    return m;
}

std::string check_solution(const DecomposedGraph &d, const Solution &s) {
    if (s.paths.size() != s.roots.size() || s.subgraphs.size() != s.roots.size())
        return "solution has mismatched robot counts";
    Partition partition;
    try {
        partition = Partition(d, s.roots, s.subgraphs);
    } catch (const std::exception &e) {
        return e.what();
    }
    if (auto why = partition.check_invariants(); !why.empty())
        return why;
    std::vector<std::uint8_t> covered(static_cast<std::size_t>(d.slot_count()), 0);
    for (std::size_t i = 0; i < s.paths.size(); ++i) {
        const auto &walk = s.paths[i].vertices();
        if (walk.empty() || walk.front() != s.roots[i])
            return "walk of robot " + std::to_string(i) + " does not start at its root";
        for (std::size_t k = 0; k < walk.size(); ++k) {
            if (!partition.contains(static_cast<int>(i), walk[k]))
                return "walk of robot " + std::to_string(i) + " leaves its subgraph";
            if (walk.size() > 1 && !d.adjacent(walk[k], walk[(k + 1) % walk.size()]))
                return "walk of robot " + std::to_string(i) + " has a nonadjacent step";
            covered[walk[k]] = 1;
        }
    }
    for (VertexId v : d.vertices())
        if (!covered[v])
            return "vertex " + to_string(d.coord(v)) + " is not covered by any walk";
    if (std::abs(makespan_of(s.paths) - s.makespan) > kWeightTolerance)
        return "recorded makespan is stale";
    return {};
}

SearchState::SearchState(const DecomposedGraph &d, const Solution &initial, Execution exec)
    : graph(&d), partition(d, initial.roots, initial.subgraphs), paths(initial.paths) {
    if (auto why = partition.check_invariants(); !why.empty())
        throw InstanceError("invalid initial solution: " + why);
    if (paths.size() != initial.roots.size())
        throw InstanceError("invalid initial solution: one walk per robot required");
    for (std::size_t i = 0; i < paths.size(); ++i)
        if (paths[i].root() != initial.roots[i])
            throw InstanceError("invalid initial solution: walk " + std::to_string(i) + " does not start at its root");
    costs.resize(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i)
        costs[i] = paths[i].cost();
    pools = OperatorPools(partition, costs, exec);
}

double SearchState::makespan() const { return costs.empty() ? 0.0 : *std::max_element(costs.begin(), costs.end()); }

void SearchState::replan(int i) {
    paths[i] = estc_path(*graph, partition.vertices(i), partition.root(i));
    costs[i] = paths[i].cost();
}

Solution SearchState::snapshot(int iteration) const {
    Solution s;
    s.roots = partition.roots();
    for (int i = 0; i < partition.robot_count(); ++i)
        s.subgraphs.push_back(partition.vertices(i));
    s.paths = paths;
    s.makespan = makespan();
    s.iteration_found = iteration;
    return s;
}

std::optional<std::array<double, 3>> pool_probabilities(const std::array<double, 3> &p,
                                                        const std::array<bool, 3> &nonempty) {
    double top = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k)
        if (nonempty[k])
            top = std::max(top, p[k]);
    if (!std::isfinite(top))
        return std::nullopt;
    std::array<double, 3> prob{};
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
        prob[k] = nonempty[k] ? std::exp(p[k] - top) : 0.0;
        total += prob[k];
    }
    for (double &x : prob)
        x /= total;
    return prob;
}

std::optional<OperatorKind> select_pool(const std::array<double, 3> &p, const std::array<bool, 3> &nonempty, Rng &rng) {
    auto prob = pool_probabilities(p, nonempty);
    if (!prob)
        return std::nullopt;
    return static_cast<OperatorKind>(rng.categorical(*prob));
}

void update_pool_weight(std::array<double, 3> &p, OperatorKind pool, double gamma, double delta) {
    double &w = p[static_cast<int>(pool)];
    w = (1.0 - gamma) * w + gamma * std::max(-delta, 0.0);
}

double heuristic(const BoundaryOperator &op, std::span<const double> costs, const Partition &p) {
    const double k = static_cast<double>(p.robot_count());
    const double dup = 0.5 * (p.count(op.edge.u) + p.count(op.edge.v));
    switch (op.kind) {
    case OperatorKind::Grow:
        return -k * costs[op.robot] - dup;
    case OperatorKind::Dedup:
        return k * costs[op.robot] + dup;
    case OperatorKind::Exchange:
        return costs[op.donor] - costs[op.robot];
    }
    return 0.0;
}

std::vector<double> normalize_heuristics(std::span<const double> h) {
    std::vector<double> out(h.begin(), h.end());
    if (out.empty())
        return out;
    const auto [lo, hi] = std::minmax_element(out.begin(), out.end());
    const double top = *hi;
    const double spread = *hi - *lo;
    for (double &x : out)
        x = spread > 0.0 ? (x - top) / spread : 0.0;
    return out;
}

std::vector<double> softmax(std::span<const double> values) {
    std::vector<double> out(values.begin(), values.end());
    if (out.empty())
        return out;
    const double top = *std::max_element(out.begin(), out.end());
    double total = 0.0;
    for (double &x : out) {
        x = std::exp(x - top);
        total += x;
    }
    for (double &x : out)
        x /= total;
    return out;
}

std::size_t sample_operator(std::span<const double> h, Rng &rng) {
    if (h.empty())
        throw std::invalid_argument("cannot sample from an empty operator pool");
    const auto prob = softmax(h);
    return rng.categorical(prob);
}

namespace {

std::vector<int> touched_robots(const BoundaryOperator &op) {
    if (op.kind == OperatorKind::Exchange)
        return {std::min(op.robot, op.donor), std::max(op.robot, op.donor)};
    return {op.robot};
}

// Descending cost, ascending index on ties.
std::vector<int> robots_by_cost(std::span<const double> costs) {
    std::vector<int> order(costs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return costs[a] > costs[b]; });
    return order;
}

}  // namespace

Evaluation evaluate_delta(const BoundaryOperator &op, SearchState &state) {
    Evaluation eval;
    if (!is_valid(state.partition, op))
        return eval;
    const double before = state.makespan();
    const MutationRecord record = apply_unchecked(state.partition, op);
    std::vector<double> costs = state.costs;
    for (int i : touched_robots(op)) {
        CoveragePath path = estc_path(*state.graph, state.partition.vertices(i), state.partition.root(i));
        costs[i] = path.cost();
        eval.replanned.emplace_back(i, std::move(path));
    }
    rollback(state.partition, record);
    eval.delta = *std::max_element(costs.begin(), costs.end()) - before;
    return eval;
}

void commit(const BoundaryOperator &op, Evaluation &&eval, SearchState &state) {
    const MutationRecord record = apply_unchecked(state.partition, op);
    for (auto &[i, path] : eval.replanned) {
        state.costs[i] = path.cost();
        state.paths[i] = std::move(path);
    }
    state.pools.refresh_after(state.partition, record, state.costs);
}

double acceptance_probability(double delta, double t, double tau0) {
    if (delta < 0.0)
        return 1.0;
    if (!std::isfinite(delta) || t <= 0.0)
        return 0.0;
    const double scale = tau0 > kWeightTolerance ? tau0 : 1.0;
    return std::exp(-(delta / scale) / t);
}

bool accept(double delta, double t, double tau0, Rng &rng) {
    const double u = rng.uniform();
    return delta < 0.0 || u < acceptance_probability(delta, t, tau0);
}

std::optional<CellEdge> find_u_turn(const SearchState &state, int i) {
    const DecomposedGraph &d = *state.graph;
    const Partition &part = state.partition;
    const auto &walk = state.paths[i].vertices();
    const std::size_t n = walk.size();
    if (n < 4)
        return std::nullopt;
    std::unordered_set<std::int64_t> edges;
    auto key = [&](VertexId a, VertexId b) {
        if (a > b)
            std::swap(a, b);
        return static_cast<std::int64_t>(a) * d.slot_count() + b;
    };
    for (std::size_t k = 0; k < n; ++k)
        edges.insert(key(walk[k], walk[(k + 1) % n]));
    auto on_walk = [&](VertexId a, VertexId b) { return edges.count(key(a, b)) > 0; };

    for (std::size_t k = 0; k < n; ++k) {
        const VertexId u = walk[k];
        const VertexId v = walk[(k + 1) % n];
        if (!part.duplicated(u) || !part.duplicated(v))
            continue;
        const SubCellCoord a = d.coord(u);
        const SubCellCoord b = d.coord(v);
        const bool horizontal = a.row == b.row;
        bool shaped = false;
        for (int sign : {-1, 1}) {
            const SubCellCoord pa{a.col + (horizontal ? 0 : sign), a.row + (horizontal ? sign : 0)};
            const SubCellCoord pb{b.col + (horizontal ? 0 : sign), b.row + (horizontal ? sign : 0)};
            if (!d.present(pa) || !d.present(pb))
                continue;
            const VertexId p = d.id(pa), q = d.id(pb);
            if (on_walk(u, p) && on_walk(v, q) && on_walk(p, q)) {
                shaped = true;
                break;
            }
        }
        if (shaped && connected_without(part, i, make_cell_edge(u, v)))
            return make_cell_edge(u, v);
    }
    return std::nullopt;
}

int forced_deduplication(SearchState &state) {
    Partition &part = state.partition;
    const int k = part.robot_count();
    std::vector<std::uint8_t> touched(static_cast<std::size_t>(k), 0);
    int removed = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (int i : robots_by_cost(state.costs)) {
            while (auto e = find_u_turn(state, i)) {
                part.remove(i, e->u);
                part.remove(i, e->v);
                state.replan(i);
                touched[i] = 1;
                ++removed;
                changed = true;
            }
        }
        for (int i : robots_by_cost(state.costs)) {
            for (;;) {
                std::optional<CellEdge> best;
                double best_h = 0.0;
                for (CellEdge e : removable_edges(part, i)) {
                    if (!part.duplicated(e.u) || !part.duplicated(e.v))
                        continue;
                    const double h = heuristic(BoundaryOperator::dedup(i, e), state.costs, part);
                    if (!best || h < best_h) {
                        best = e;
                        best_h = h;
                    }
                }
                if (!best)
                    break;
                part.remove(i, best->u);
                part.remove(i, best->v);
                state.replan(i);
                touched[i] = 1;
                ++removed;
                changed = true;
            }
        }
    }
    if (removed > 0) {
        std::vector<int> robots;
        for (int i = 0; i < k; ++i)
            if (touched[i])
                robots.push_back(i);
        state.pools.refresh_robots(part, robots);
    }
    state.pools.assemble(part, state.costs);
    return removed;
}

Solution ls_mcpp(const DecomposedGraph &d, const Solution &initial, const SearchParams &params,
                 std::vector<IterationTrace> *trace) {
    params.validate();
    SearchState state(d, initial);
    Rng rng(params.seed);

    Solution best = state.snapshot(0);
    const double tau0 = best.makespan;
    double t = 1.0;
    std::array<double, 3> weights{1.0, 1.0, 1.0};
    int it = 1;
    for (; it <= params.max_iterations; ++it) {
        IterationTrace rec;
        rec.iteration = it;
        const std::array<bool, 3> nonempty{!state.pools.pool(OperatorKind::Grow).empty(),
                                           !state.pools.pool(OperatorKind::Dedup).empty(),
                                           !state.pools.pool(OperatorKind::Exchange).empty()};
        auto chosen = select_pool(weights, nonempty, rng);
        if (!chosen) {
            forced_deduplication(state);
            if (state.makespan() < best.makespan - kWeightTolerance)
                best = state.snapshot(it);
            rec.makespan = state.makespan();
            if (trace)
                trace->push_back(rec);
            break;
        }
        const std::vector<BoundaryOperator> &pool = state.pools.pool(*chosen);
        std::vector<double> h;
        h.reserve(pool.size());
        for (const auto &op : pool)
            h.push_back(heuristic(op, state.costs, state.partition));
        const BoundaryOperator op = pool[sample_operator(normalize_heuristics(h), rng)];

        Evaluation eval = evaluate_delta(op, state);
        const double delta = eval.delta;
        update_pool_weight(weights, *chosen, params.gamma, delta);
        const bool accepted = accept(delta, t, tau0, rng);
        if (accepted)
            commit(op, std::move(eval), state);

        if (it % params.dedup_period == 0 || delta < 0.0)
            forced_deduplication(state);
        if (state.makespan() < best.makespan - kWeightTolerance)
            best = state.snapshot(it);
#ifndef NDEBUG
        if (auto why = state.partition.check_invariants(); !why.empty())
            throw std::logic_error("local search broke a partition invariant: " + why);
#else
        if (it % params.dedup_period == 0)
            if (auto why = state.partition.check_invariants(); !why.empty())
                throw std::logic_error("local search broke a partition invariant: " + why);
#endif
        t = temperature_step(t, params.alpha);

        rec.pool = static_cast<int>(*chosen);
        rec.kind = op.kind;
        rec.delta = delta;
        rec.accepted = accepted;
        rec.makespan = state.makespan();
        if (trace)
            trace->push_back(rec);
    }
    best.iterations_run = std::min(it, params.max_iterations);
    best.seed = params.seed;
    return best;
}

}  // namespace mcpp
