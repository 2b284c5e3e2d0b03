#pragma once

#include "mcpp/partition.hpp"

#include <array>
#include <span>
#include <vector>

namespace mcpp {

/// Parallel kernels use OpenMP when the build enables it; the serial path is
/// the reference they are tested against.
enum class Execution { Serial, Parallel };

/// Grow-valid same-cell edges for robot i. Depends on V_{d,i} only.
std::vector<CellEdge> growable_edges(const Partition &p, int i);

/// Edges whose removal from D_i passes the dedup geometry, root, and
/// connectivity checks (V+ membership not required). Depends on V_{d,i} only.
std::vector<CellEdge> removable_edges(const Partition &p, int i, Execution exec = Execution::Parallel);

/// Light subgraphs have c(pi_i) <= mean cost (within kWeightTolerance).
std::vector<std::uint8_t> light_robots(std::span<const double> costs);

/// Pool contents built from scratch: grow for light robots, dedup for heavy
/// robots, exchange for light receivers and any donor. Sorted.
std::vector<BoundaryOperator> enumerate_operators(OperatorKind kind, const Partition &p, std::span<const double> costs,
                                                  Execution exec = Execution::Parallel);

/// The three operator pools with per-robot caches. Only robots touched by a
/// mutation have their caches recomputed; pools are then reassembled against
/// the new costs and duplication set.
class OperatorPools {
  public:
    OperatorPools() = default;
    OperatorPools(const Partition &p, std::span<const double> costs, Execution exec = Execution::Parallel);

    void refresh_robots(const Partition &p, std::span<const int> robots);
    void assemble(const Partition &p, std::span<const double> costs);
    /// refresh_robots(record.robots()) followed by assemble.
    void refresh_after(const Partition &p, const MutationRecord &record, std::span<const double> costs);

    const std::vector<BoundaryOperator> &pool(OperatorKind k) const { return pools_[static_cast<int>(k)]; }
    bool all_empty() const;
    const std::vector<CellEdge> &growable(int i) const { return growable_[i]; }
    const std::vector<CellEdge> &removable(int i) const { return removable_[i]; }

  private:
    Execution exec_ = Execution::Parallel;
    std::vector<std::vector<CellEdge>> growable_;
    std::vector<std::vector<CellEdge>> removable_;
    std::array<std::vector<BoundaryOperator>, 3> pools_;
};

}  // namespace mcpp
