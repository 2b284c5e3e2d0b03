#pragma once

#include "mcpp/grid.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcpp {

/// Per-robot vertex sets V_{d,i} over D, with occurrence counts n_v.
/// Edges of each D_i are induced from D.
class Partition {
  public:
    Partition() = default;
    /// Robot i owns `sets[i]`; roots[i] must be in sets[i].
    Partition(const DecomposedGraph &d, std::vector<VertexId> roots, const std::vector<std::vector<VertexId>> &sets);

    const DecomposedGraph &graph() const { return *graph_; }
    int robot_count() const { return static_cast<int>(roots_.size()); }
    const std::vector<VertexId> &roots() const { return roots_; }
    VertexId root(int i) const { return roots_[i]; }

    bool contains(int i, VertexId v) const { return member_[i][v] != 0; }
    int size(int i) const { return size_[i]; }
    /// n_v
    int count(VertexId v) const { return count_[v]; }
    /// v in V+ (n_v > 1)
    bool duplicated(VertexId v) const { return count_[v] > 1; }
    /// Ascending vertex list of V_{d,i}.
    std::vector<VertexId> vertices(int i) const;
    std::vector<VertexId> duplication_set() const;
    /// Terrain cell has at least one subcell in V_{d,i}.
    bool holds_cell(int i, CellId c) const;
    /// Every present subcell of c belongs to V_{d,i}. Cells outside G yield false.
    bool holds_all_of(int i, TerrainCoord c) const;

    void add(int i, VertexId v);
    void remove(int i, VertexId v);

    /// Union covers D, each D_i is connected, roots are members, counts match.
    /// Returns an empty string when valid, else the first violation.
    std::string check_invariants() const;
    bool valid() const { return check_invariants().empty(); }

    bool operator==(const Partition &o) const {
        return roots_ == o.roots_ && member_ == o.member_ && size_ == o.size_ && count_ == o.count_;
    }

  private:
    const DecomposedGraph *graph_ = nullptr;
    std::vector<VertexId> roots_;
    std::vector<std::vector<std::uint8_t>> member_;
    std::vector<int> size_;
    std::vector<int> count_;
};

/// Edge (u,v) between two subcells of the same terrain cell, u < v.
struct CellEdge {
    VertexId u = kNoVertex;
    VertexId v = kNoVertex;
    auto operator<=>(const CellEdge &) const = default;
};

CellEdge make_cell_edge(VertexId a, VertexId b);

enum class OperatorKind : int { Grow = 0, Dedup = 1, Exchange = 2 };

const char *to_string(OperatorKind k);

/// Grow(i,e): add e to D_i. Dedup(i,e): remove e from D_i.
/// Exchange(i,j,e): add e to D_i and remove it from D_j.
struct BoundaryOperator {
    OperatorKind kind = OperatorKind::Grow;
    int robot = 0;
    int donor = -1;  // only for Exchange
    CellEdge edge;
    auto operator<=>(const BoundaryOperator &) const = default;

    static BoundaryOperator grow(int i, CellEdge e) { return {OperatorKind::Grow, i, -1, e}; }
    static BoundaryOperator dedup(int i, CellEdge e) { return {OperatorKind::Dedup, i, -1, e}; }
    static BoundaryOperator exchange(int i, int j, CellEdge e) { return {OperatorKind::Exchange, i, j, e}; }
};

/// Thrown by apply_operator when the operator is not valid for the current
/// partition; nothing is mutated.
class StaleOperator : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Same-cell edges of D_i: both endpoints in V_{d,i}.
std::vector<CellEdge> same_cell_edges(const Partition &p, int i);
/// Same-cell edges of D with both endpoints outside V_{d,i} (grow candidates).
std::vector<CellEdge> outside_cell_edges(const Partition &p, int i);

/// B_i: vertices outside V_{d,i} adjacent to some vertex of V_{d,i}. Ascending.
std::vector<VertexId> boundary_vertices(const Partition &p, int i);

bool is_valid_grow(const Partition &p, int i, CellEdge e);
/// Dedup validity with the V+ membership requirement replaced by plain
/// membership in V_{d,i}: geometry conditions, roots kept, D_i stays connected.
bool is_valid_removal(const Partition &p, int i, CellEdge e);
bool is_valid_dedup(const Partition &p, int i, CellEdge e);
bool is_valid_exchange(const Partition &p, int i, int j, CellEdge e);
bool is_valid(const Partition &p, const BoundaryOperator &op);

/// Connectivity of D_i after dropping the two endpoints of e.
bool connected_without(const Partition &p, int i, CellEdge e);

/// Reversible record of a partition mutation.
struct MutationRecord {
    struct Change {
        int robot;
        VertexId vertex;
        bool added;
    };
    std::vector<Change> changes;
    /// Robots whose vertex sets changed.
    std::vector<int> robots() const;
};

/// Applies a valid operator; throws StaleOperator otherwise.
MutationRecord apply_operator(Partition &p, const BoundaryOperator &op);
/// Applies without re-validating (caller has just checked).
MutationRecord apply_unchecked(Partition &p, const BoundaryOperator &op);
void rollback(Partition &p, const MutationRecord &record);

}  // namespace mcpp
