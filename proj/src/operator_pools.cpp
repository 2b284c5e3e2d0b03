#include "mcpp/operator_pools.hpp"

#include <algorithm>
#include <numeric>

namespace mcpp {

std::vector<CellEdge> growable_edges(const Partition &p, int i) {
    const DecomposedGraph &d = p.graph();
    std::vector<CellEdge> candidates;
    for (VertexId b : boundary_vertices(p, i)) {
        const CellId c = d.cell_of(b);
        const int q = d.quadrant_of(b);
        for (int flip : {1, 2}) {
            VertexId w = d.subcell(c, static_cast<Quadrant>(q ^ flip));
            if (w > b && d.present(w) && !p.contains(i, w))
                candidates.push_back({b, w});
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::erase_if(candidates, [&](CellEdge e) { return !is_valid_grow(p, i, e); });
    return candidates;
}

std::vector<CellEdge> removable_edges(const Partition &p, int i, Execution exec) {
    const std::vector<CellEdge> candidates = same_cell_edges(p, i);
    const auto n = static_cast<std::ptrdiff_t>(candidates.size());
    std::vector<std::uint8_t> ok(candidates.size(), 0);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t k = 0; k < n; ++k)
            ok[k] = is_valid_removal(p, i, candidates[k]);
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k)
            ok[k] = is_valid_removal(p, i, candidates[k]);
    }
    std::vector<CellEdge> out;
    for (std::size_t k = 0; k < candidates.size(); ++k)
        if (ok[k])
            out.push_back(candidates[k]);
    return out;
}

std::vector<std::uint8_t> light_robots(std::span<const double> costs) {
    const double mean = costs.empty() ? 0.0 : std::accumulate(costs.begin(), costs.end(), 0.0) / costs.size();
    std::vector<std::uint8_t> light(costs.size());
    for (std::size_t i = 0; i < costs.size(); ++i)
        light[i] = costs[i] <= mean + kWeightTolerance;
    return light;
}

namespace {

std::vector<BoundaryOperator> assemble_pool(OperatorKind kind, const Partition &p, std::span<const double> costs,
                                            const std::vector<std::vector<CellEdge>> &growable,
                                            const std::vector<std::vector<CellEdge>> &removable) {
    const auto light = light_robots(costs);
    const int k = p.robot_count();
    std::vector<BoundaryOperator> out;
    switch (kind) {
    case OperatorKind::Grow:
        for (int i = 0; i < k; ++i)
            if (light[i])
                for (CellEdge e : growable[i])
                    out.push_back(BoundaryOperator::grow(i, e));
        break;
    case OperatorKind::Dedup:
        for (int i = 0; i < k; ++i)
            if (!light[i])
                for (CellEdge e : removable[i])
                    if (p.duplicated(e.u) && p.duplicated(e.v))
                        out.push_back(BoundaryOperator::dedup(i, e));
        break;
    case OperatorKind::Exchange:
        for (int i = 0; i < k; ++i) {
            if (!light[i])
                continue;
            for (CellEdge e : growable[i])
                for (int j = 0; j < k; ++j)
                    if (j != i && std::binary_search(removable[j].begin(), removable[j].end(), e))
                        out.push_back(BoundaryOperator::exchange(i, j, e));
        }
        break;
    }
    return out;
}

}  // namespace

std::vector<BoundaryOperator> enumerate_operators(OperatorKind kind, const Partition &p, std::span<const double> costs,
                                                  Execution exec) {
    const int k = p.robot_count();
    std::vector<std::vector<CellEdge>> growable(static_cast<std::size_t>(k));
    std::vector<std::vector<CellEdge>> removable(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        if (kind != OperatorKind::Dedup)
            growable[i] = growable_edges(p, i);
        if (kind != OperatorKind::Grow)
            removable[i] = removable_edges(p, i, exec);
    }
    return assemble_pool(kind, p, costs, growable, removable);
}

OperatorPools::OperatorPools(const Partition &p, std::span<const double> costs, Execution exec) : exec_(exec) {
    growable_.resize(static_cast<std::size_t>(p.robot_count()));
    removable_.resize(static_cast<std::size_t>(p.robot_count()));
    std::vector<int> all(static_cast<std::size_t>(p.robot_count()));
    std::iota(all.begin(), all.end(), 0);
    refresh_robots(p, all);
    assemble(p, costs);
}

void OperatorPools::refresh_robots(const Partition &p, std::span<const int> robots) {
    for (int i : robots) {
        growable_[i] = growable_edges(p, i);
        removable_[i] = removable_edges(p, i, exec_);
    }
}

void OperatorPools::assemble(const Partition &p, std::span<const double> costs) {
    for (OperatorKind kind : {OperatorKind::Grow, OperatorKind::Dedup, OperatorKind::Exchange})
        pools_[static_cast<int>(kind)] = assemble_pool(kind, p, costs, growable_, removable_);
}

void OperatorPools::refresh_after(const Partition &p, const MutationRecord &record, std::span<const double> costs) {
    const auto robots = record.robots();
    refresh_robots(p, robots);
    assemble(p, costs);
}

bool OperatorPools::all_empty() const {
    return std::all_of(pools_.begin(), pools_.end(), [](const auto &pool) { return pool.empty(); });
}

}  // namespace mcpp
