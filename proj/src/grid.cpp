#include "mcpp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace mcpp {

TerrainGraph::TerrainGraph(int width, int height, std::vector<std::uint8_t> mask, double default_weight)
    : width_(width), height_(height), present_(std::move(mask)) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("terrain dimensions must be positive");
    if (static_cast<int>(present_.size()) != width * height)
        throw std::invalid_argument("presence mask does not match terrain dimensions");
    if (!(default_weight >= 0.0) || !std::isfinite(default_weight))
        throw std::invalid_argument("edge weights must be finite and nonnegative");
    horiz_.assign(present_.size(), -1.0);
    vert_.assign(present_.size(), -1.0);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (!present({c, r}))
                continue;
            if (present({c + 1, r}))
                horiz_[id({c, r})] = default_weight;
            if (present({c, r + 1}))
                vert_[id({c, r})] = default_weight;
        }
    }
}

std::pair<int, int> TerrainGraph::edge_slot(TerrainCoord a, TerrainCoord b) const {
    if (b < a)
        std::swap(a, b);
    // b is now east of or below a when they are adjacent
    if (a.row == b.row && b.col == a.col + 1)
        return {0, id(a)};
    if (a.col == b.col && b.row == a.row + 1)
        return {1, id(a)};
    return {-1, -1};
}

std::optional<double> TerrainGraph::edge_weight(TerrainCoord a, TerrainCoord b) const {
    if (!present(a) || !present(b))
        return std::nullopt;
    auto [dir, slot] = edge_slot(a, b);
    if (dir < 0)
        return std::nullopt;
    double w = dir == 0 ? horiz_[slot] : vert_[slot];
    if (w < 0.0)
        return std::nullopt;
    return w;
}

void TerrainGraph::set_edge_weight(TerrainCoord a, TerrainCoord b, double w) {
    if (!(w >= 0.0) || !std::isfinite(w))
        throw std::invalid_argument("edge weights must be finite and nonnegative");
    if (!present(a) || !present(b))
        throw std::invalid_argument("edge endpoints must be present terrain cells");
    auto [dir, slot] = edge_slot(a, b);
    if (dir < 0)
        throw std::invalid_argument("edge endpoints are not 4-adjacent");
    (dir == 0 ? horiz_ : vert_)[slot] = w;
}

int TerrainGraph::vertex_count() const {
    return static_cast<int>(std::count(present_.begin(), present_.end(), std::uint8_t{1}));
}

int TerrainGraph::edge_count() const {
    auto pos = [](double w) { return w >= 0.0; };
    return static_cast<int>(std::count_if(horiz_.begin(), horiz_.end(), pos) +
                            std::count_if(vert_.begin(), vert_.end(), pos));
}

double TerrainGraph::max_edge_weight() const {
    double m = 0.0;
    for (double w : horiz_)
        m = std::max(m, w);
    for (double w : vert_)
        m = std::max(m, w);
    return m;
}

std::vector<TerrainCoord> TerrainGraph::cells() const {
    std::vector<TerrainCoord> out;
    for (CellId i = 0; i < cell_count(); ++i)
        if (present_[i])
            out.push_back(coord(i));
    return out;
}

double terrain_vertex_weight(const TerrainGraph &g, TerrainCoord c) {
    if (!g.present(c))
        throw std::domain_error("terrain vertex (" + std::to_string(c.col) + "," + std::to_string(c.row) +
                                ") is not present");
    double sum = 0.0;
    constexpr std::array<TerrainCoord, 4> kSteps{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};
    for (auto s : kSteps)
        if (auto w = g.edge_weight(c, {c.col + s.col, c.row + s.row}))
            sum += *w;
    return sum;
}

CellId DecomposedGraph::cell_of(VertexId v) const {
    auto s = coord(v);
    return terrain_.id(s.parent());
}

VertexId DecomposedGraph::subcell(CellId cell, Quadrant q) const {
    return id(SubCellCoord::of(terrain_.coord(cell), q));
}

int DecomposedGraph::edge_count() const {
    int n = 0;
    for (VertexId v : vertices_)
        for (VertexId u : neighbors(v))
            n += u > v;
    return n;
}

DecomposedGraph::Neighbors DecomposedGraph::neighbors(VertexId v) const {
    Neighbors out;
    const int w = width();
    const int col = v % w;
    if (v - w >= 0 && present_[v - w])
        out.ids[out.count++] = v - w;
    if (col > 0 && present_[v - 1])
        out.ids[out.count++] = v - 1;
    if (col + 1 < w && present_[v + 1])
        out.ids[out.count++] = v + 1;
    if (v + w < slot_count() && present_[v + w])
        out.ids[out.count++] = v + w;
    return out;
}

bool DecomposedGraph::adjacent(VertexId u, VertexId v) const {
    if (!present(u) || !present(v))
        return false;
    const int w = width();
    int d = std::abs(u - v);
    if (d == w)
        return true;
    return d == 1 && u / w == v / w;
}

bool DecomposedGraph::cell_complete(CellId c) const { return present_subcells(c) == 4; }

int DecomposedGraph::present_subcells(CellId c) const {
    int n = 0;
    for (Quadrant q : {NW, NE, SW, SE})
        n += present_[subcell(c, q)];
    return n;
}

bool DecomposedGraph::is_complete() const {
    for (CellId c = 0; c < terrain_.cell_count(); ++c)
        if (terrain_.present(terrain_.coord(c)) && !cell_complete(c))
            return false;
    return true;
}

DecomposedGraph decompose_unchecked(const TerrainGraph &g, std::span<const SubCellCoord> blocked) {
    DecomposedGraph d;
    d.terrain_ = g;
    d.present_.assign(static_cast<std::size_t>(d.slot_count()), 0);
    d.cell_weight_.assign(static_cast<std::size_t>(g.cell_count()), 0.0);
    for (CellId c = 0; c < g.cell_count(); ++c) {
        auto tc = g.coord(c);
        if (!g.present(tc))
            continue;
        d.cell_weight_[c] = terrain_vertex_weight(g, tc);
        for (Quadrant q : {NW, NE, SW, SE})
            d.present_[d.subcell(c, q)] = 1;
    }
    for (auto s : blocked) {
        if (!d.in_bounds(s) || !g.present(s.parent()))
            throw InstanceError("blocked subcell " + to_string(s) + " has no present terrain cell");
        d.present_[d.id(s)] = 0;
    }
    for (VertexId v = 0; v < d.slot_count(); ++v)
        if (d.present_[v])
            d.vertices_.push_back(v);
    return d;
}

DecomposedGraph build_decomposed_graph(const TerrainGraph &g, std::span<const SubCellCoord> blocked) {
    DecomposedGraph d = decompose_unchecked(g, blocked);
    if (d.vertex_count() == 0)
        throw InstanceError("decomposed graph is empty");
    auto comps = connected_components(d, d.vertices());
    if (comps.size() > 1) {
        std::string msg = "decomposed graph is disconnected (" + std::to_string(comps.size()) + " components:";
        for (const auto &c : comps)
            msg += " [" + to_string(d.coord(c.front())) + " +" + std::to_string(c.size() - 1) + "]";
        throw InstanceError(msg + ")");
    }
    return d;
}

bool is_complete(const DecomposedGraph &d, TerrainCoord cell) {
    return d.cell_complete(d.terrain().id(cell));
}

bool is_complete_graph(const DecomposedGraph &d) { return d.is_complete(); }

std::vector<std::uint8_t> make_mask(const DecomposedGraph &d, std::span<const VertexId> vertices) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(d.slot_count()), 0);
    for (VertexId v : vertices)
        mask[v] = 1;
    return mask;
}

std::vector<std::vector<VertexId>> connected_components(const DecomposedGraph &d, std::span<const VertexId> vertices) {
    std::vector<std::uint8_t> state = make_mask(d, vertices);  // 1 = unvisited member, 2 = visited
    std::vector<VertexId> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<VertexId>> comps;
    std::vector<VertexId> stack;
    for (VertexId s : sorted) {
        if (state[s] != 1)
            continue;
        auto &comp = comps.emplace_back();
        state[s] = 2;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (VertexId u : d.neighbors(v)) {
                if (state[u] == 1) {
                    state[u] = 2;
                    stack.push_back(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
    }
    return comps;
}

bool is_connected(const DecomposedGraph &d, std::span<const VertexId> vertices) {
    if (vertices.empty())
        return false;
    return connected_components(d, vertices).size() == 1;
}

std::string to_string(SubCellCoord s) { return "(" + std::to_string(s.col) + "," + std::to_string(s.row) + ")"; }

}  // namespace mcpp
