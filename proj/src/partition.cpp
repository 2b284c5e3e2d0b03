#include "mcpp/partition.hpp"

#include <algorithm>

namespace mcpp {

Partition::Partition(const DecomposedGraph &d, std::vector<VertexId> roots, const std::vector<std::vector<VertexId>> &sets)
    : graph_(&d), roots_(std::move(roots)) {
    if (roots_.empty())
        throw std::invalid_argument("partition needs at least one robot");
    if (sets.size() != roots_.size())
        throw std::invalid_argument("partition needs one vertex set per robot");
    const auto slots = static_cast<std::size_t>(d.slot_count());
    member_.assign(roots_.size(), std::vector<std::uint8_t>(slots, 0));
    size_.assign(roots_.size(), 0);
    count_.assign(slots, 0);
    for (int i = 0; i < robot_count(); ++i) {
        for (VertexId v : sets[i]) {
            if (!d.present(v))
                throw std::invalid_argument("vertex " + std::to_string(v) + " is not in D");
            if (!contains(i, v))
                add(i, v);
        }
    }
}

std::vector<VertexId> Partition::vertices(int i) const {
    std::vector<VertexId> out;
    out.reserve(static_cast<std::size_t>(size_[i]));
    for (VertexId v : graph_->vertices())
        if (member_[i][v])
            out.push_back(v);
    return out;
}

std::vector<VertexId> Partition::duplication_set() const {
    std::vector<VertexId> out;
    for (VertexId v : graph_->vertices())
        if (count_[v] > 1)
            out.push_back(v);
    return out;
}

bool Partition::holds_cell(int i, CellId c) const {
    for (Quadrant q : {NW, NE, SW, SE})
        if (member_[i][graph_->subcell(c, q)])
            return true;
    return false;
}

bool Partition::holds_all_of(int i, TerrainCoord c) const {
    const TerrainGraph &t = graph_->terrain();
    if (!t.present(c))
        return false;
    const CellId id = t.id(c);
    int present = 0;
    for (Quadrant q : {NW, NE, SW, SE}) {
        VertexId v = graph_->subcell(id, q);
        if (!graph_->present(v))
            continue;
        ++present;
        if (!member_[i][v])
            return false;
    }
    return present > 0;
}

void Partition::add(int i, VertexId v) {
    if (member_[i][v])
        throw std::logic_error("vertex already in subgraph");
    member_[i][v] = 1;
    ++size_[i];
    ++count_[v];
}

void Partition::remove(int i, VertexId v) {
    if (!member_[i][v])
        throw std::logic_error("vertex not in subgraph");
    member_[i][v] = 0;
    --size_[i];
    --count_[v];
}

std::string Partition::check_invariants() const {
    const DecomposedGraph &d = *graph_;
    std::vector<int> recount(count_.size(), 0);
    for (int i = 0; i < robot_count(); ++i) {
        if (!d.present(roots_[i]) || !member_[i][roots_[i]])
            return "root of robot " + std::to_string(i) + " is not in its subgraph";
        int n = 0;
        for (VertexId v = 0; v < d.slot_count(); ++v) {
            if (!member_[i][v])
                continue;
            if (!d.present(v))
                return "robot " + std::to_string(i) + " holds a vertex outside D";
            ++recount[v];
            ++n;
        }
        if (n != size_[i])
            return "size of robot " + std::to_string(i) + " is stale";
        if (!is_connected(d, vertices(i)))
            return "subgraph of robot " + std::to_string(i) + " is disconnected";
    }
    if (recount != count_)
        return "occurrence counts are stale";
    for (VertexId v : d.vertices())
        if (count_[v] == 0)
            return "vertex " + to_string(d.coord(v)) + " is uncovered";
    return {};
}

CellEdge make_cell_edge(VertexId a, VertexId b) { return a < b ? CellEdge{a, b} : CellEdge{b, a}; }

const char *to_string(OperatorKind k) {
    switch (k) {
    case OperatorKind::Grow:
        return "grow";
    case OperatorKind::Dedup:
        return "dedup";
    case OperatorKind::Exchange:
        return "exchange";
    }
    return "?";
}

namespace {

// Same-cell neighbors of v present in D (at most two).
template <typename Fn>
void for_each_cell_partner(const DecomposedGraph &d, VertexId v, Fn &&fn) {
    const CellId c = d.cell_of(v);
    const int q = d.quadrant_of(v);
    for (int flip : {1, 2}) {
        VertexId w = d.subcell(c, static_cast<Quadrant>(q ^ flip));
        if (d.present(w))
            fn(w);
    }
}

bool is_cell_edge(const DecomposedGraph &d, CellEdge e) {
    return d.present(e.u) && d.present(e.v) && e.u != e.v && d.cell_of(e.u) == d.cell_of(e.v) && d.adjacent(e.u, e.v);
}

std::vector<CellEdge> cell_edges_where(const Partition &p, int i, bool inside) {
    const DecomposedGraph &d = p.graph();
    std::vector<CellEdge> out;
    for (VertexId v : d.vertices()) {
        if (p.contains(i, v) != inside)
            continue;
        for_each_cell_partner(d, v, [&](VertexId w) {
            if (w > v && p.contains(i, w) == inside)
                out.push_back({v, w});
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool touches(const Partition &p, int i, VertexId v) {
    for (VertexId u : p.graph().neighbors(v))
        if (p.contains(i, u))
            return true;
    return false;
}

TerrainCoord offset(TerrainCoord c, TerrainCoord d) { return {c.col + d.col, c.row + d.row}; }

// Orientation of the cell neighbors relative to the side of the 2x2 block
// that e occupies: t faces e, b is opposite, l and r flank.
struct SideFrame {
    TerrainCoord t, b, l, r;
};

SideFrame frame_of(const DecomposedGraph &d, CellEdge e) {
    const int qu = d.quadrant_of(e.u);
    const int qv = d.quadrant_of(e.v);
    const int both = (1 << qu) | (1 << qv);
    if (both == ((1 << NW) | (1 << NE)))
        return {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};
    if (both == ((1 << SW) | (1 << SE)))
        return {{0, 1}, {0, -1}, {-1, 0}, {1, 0}};
    if (both == ((1 << NW) | (1 << SW)))
        return {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    return {{1, 0}, {-1, 0}, {0, -1}, {0, 1}};
}

bool holds_any(const Partition &p, int i, TerrainCoord c) {
    const TerrainGraph &t = p.graph().terrain();
    return t.present(c) && p.holds_cell(i, t.id(c));
}

// Conditions (1)-(3) for removing e from D_i when e's cell is complete in D.
bool removal_geometry_ok(const Partition &p, int i, CellEdge e) {
    const DecomposedGraph &d = p.graph();
    const CellId cell = d.cell_of(e.u);
    if (!d.cell_complete(cell))
        return true;
    const TerrainCoord c = d.terrain().coord(cell);
    const SideFrame f = frame_of(d, e);
    if (holds_any(p, i, offset(c, f.t)))
        return false;
    if (!p.holds_all_of(i, offset(c, f.b)))
        return false;
    for (TerrainCoord side : {f.l, f.r}) {
        TerrainCoord s = offset(c, side);
        if (!holds_any(p, i, s))
            continue;
        if (!p.holds_all_of(i, s) || !p.holds_all_of(i, offset(s, f.b)))
            return false;
    }
    return true;
}

}  // namespace

std::vector<CellEdge> same_cell_edges(const Partition &p, int i) { return cell_edges_where(p, i, true); }

std::vector<CellEdge> outside_cell_edges(const Partition &p, int i) { return cell_edges_where(p, i, false); }

std::vector<VertexId> boundary_vertices(const Partition &p, int i) {
    std::vector<VertexId> out;
    for (VertexId v : p.graph().vertices())
        if (!p.contains(i, v) && touches(p, i, v))
            out.push_back(v);
    return out;
}

bool is_valid_grow(const Partition &p, int i, CellEdge e) {
    const DecomposedGraph &d = p.graph();
    if (!is_cell_edge(d, e) || p.contains(i, e.u) || p.contains(i, e.v))
        return false;
    if (!touches(p, i, e.u) || !touches(p, i, e.v))
        return false;
    const SubCellCoord a = d.coord(e.u);
    const SubCellCoord b = d.coord(e.v);
    const bool horizontal = a.row == b.row;
    for (int sign : {-1, 1}) {
        const int dc = horizontal ? 0 : sign;
        const int dr = horizontal ? sign : 0;
        const SubCellCoord pa{a.col + dc, a.row + dr};
        const SubCellCoord pb{b.col + dc, b.row + dr};
        if (d.present(pa) && d.present(pb) && p.contains(i, d.id(pa)) && p.contains(i, d.id(pb)))
            return true;
    }
    return false;
}

bool connected_without(const Partition &p, int i, CellEdge e) {
    const DecomposedGraph &d = p.graph();
    const VertexId root = p.root(i);
    if (root == e.u || root == e.v)
        return false;
    const int target = p.size(i) - static_cast<int>(p.contains(i, e.u)) - static_cast<int>(p.contains(i, e.v));
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(d.slot_count()), 0);
    seen[e.u] = seen[e.v] = 1;
    seen[root] = 1;
    std::vector<VertexId> stack{root};
    int reached = 0;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++reached;
        for (VertexId u : d.neighbors(v)) {
            if (!seen[u] && p.contains(i, u)) {
                seen[u] = 1;
                stack.push_back(u);
            }
        }
    }
    return reached == target;
}

bool is_valid_removal(const Partition &p, int i, CellEdge e) {
    const DecomposedGraph &d = p.graph();
    if (!is_cell_edge(d, e) || !p.contains(i, e.u) || !p.contains(i, e.v))
        return false;
    if (e.u == p.root(i) || e.v == p.root(i))
        return false;
    return removal_geometry_ok(p, i, e) && connected_without(p, i, e);
}

bool is_valid_dedup(const Partition &p, int i, CellEdge e) {
    if (!p.graph().present(e.u) || !p.graph().present(e.v))
        return false;
    return p.duplicated(e.u) && p.duplicated(e.v) && is_valid_removal(p, i, e);
}

bool is_valid_exchange(const Partition &p, int i, int j, CellEdge e) {
    if (i == j || j < 0 || j >= p.robot_count())
        return false;
    return is_valid_grow(p, i, e) && is_valid_removal(p, j, e);
}

bool is_valid(const Partition &p, const BoundaryOperator &op) {
    if (op.robot < 0 || op.robot >= p.robot_count())
        return false;
    switch (op.kind) {
    case OperatorKind::Grow:
        return is_valid_grow(p, op.robot, op.edge);
    case OperatorKind::Dedup:
        return is_valid_dedup(p, op.robot, op.edge);
    case OperatorKind::Exchange:
        return is_valid_exchange(p, op.robot, op.donor, op.edge);
    }
    return false;
}

std::vector<int> MutationRecord::robots() const {
    std::vector<int> out;
    for (const auto &c : changes)
        out.push_back(c.robot);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MutationRecord apply_unchecked(Partition &p, const BoundaryOperator &op) {
    MutationRecord rec;
    auto add = [&](int i, VertexId v) {
        p.add(i, v);
        rec.changes.push_back({i, v, true});
    };
    auto drop = [&](int i, VertexId v) {
        p.remove(i, v);
        rec.changes.push_back({i, v, false});
    };
    switch (op.kind) {
    case OperatorKind::Grow:
        add(op.robot, op.edge.u);
        add(op.robot, op.edge.v);
        break;
    case OperatorKind::Dedup:
        drop(op.robot, op.edge.u);
        drop(op.robot, op.edge.v);
        break;
    case OperatorKind::Exchange:
        add(op.robot, op.edge.u);
        add(op.robot, op.edge.v);
        drop(op.donor, op.edge.u);
        drop(op.donor, op.edge.v);
        break;
    }
    return rec;
}

MutationRecord apply_operator(Partition &p, const BoundaryOperator &op) {
    if (!is_valid(p, op))
        throw StaleOperator(std::string("operator ") + to_string(op.kind) + " on robot " + std::to_string(op.robot) +
                            " is not valid for the current partition");
    return apply_unchecked(p, op);
}

void rollback(Partition &p, const MutationRecord &record) {
    for (auto it = record.changes.rbegin(); it != record.changes.rend(); ++it) {
        if (it->added)
            p.remove(it->robot, it->vertex);
        else
            p.add(it->robot, it->vertex);
    }
}

}  // namespace mcpp
