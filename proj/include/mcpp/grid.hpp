#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcpp {

/// Dense index of a subcell on the doubled grid (row-major).
using VertexId = std::int32_t;
/// Dense index of a terrain cell (row-major).
using CellId = std::int32_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr double kWeightTolerance = 1e-9;

/// Raised when an instance violates a structural requirement (disconnected D,
/// bad roots, ...).
class InstanceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct TerrainCoord {
    int col = 0;
    int row = 0;
    auto operator<=>(const TerrainCoord &) const = default;
};

/// Quadrant of a subcell inside its terrain cell: bit 0 is east, bit 1 is south.
enum Quadrant : int { NW = 0, NE = 1, SW = 2, SE = 3 };

struct SubCellCoord {
    int col = 0;
    int row = 0;
    auto operator<=>(const SubCellCoord &) const = default;

    TerrainCoord parent() const { return {col / 2, row / 2}; }
    Quadrant quadrant() const { return static_cast<Quadrant>((col % 2) + 2 * (row % 2)); }
    static SubCellCoord of(TerrainCoord cell, Quadrant q) {
        return {2 * cell.col + (q & 1), 2 * cell.row + (q >> 1)};
    }
};

/// 4-connected grid of terrain cells with nonnegative edge weights.
class TerrainGraph {
  public:
    TerrainGraph() = default;
    /// All cells in `present` (row-major, width*height) are passable; every
    /// pair of 4-adjacent present cells gets `default_weight`.
    TerrainGraph(int width, int height, std::vector<std::uint8_t> present, double default_weight = 1.0);

    int width() const { return width_; }
    int height() const { return height_; }
    int cell_count() const { return width_ * height_; }

    bool in_bounds(TerrainCoord c) const { return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_; }
    bool present(TerrainCoord c) const { return in_bounds(c) && present_[id(c)] != 0; }
    CellId id(TerrainCoord c) const { return c.row * width_ + c.col; }
    TerrainCoord coord(CellId id) const { return {id % width_, id / width_}; }

    /// Weight of the edge between two 4-adjacent present cells, if it exists.
    std::optional<double> edge_weight(TerrainCoord a, TerrainCoord b) const;
    void set_edge_weight(TerrainCoord a, TerrainCoord b, double w);

    int vertex_count() const;
    int edge_count() const;
    double max_edge_weight() const;
    /// Present cells in row-major order.
    std::vector<TerrainCoord> cells() const;

    bool operator==(const TerrainGraph &) const = default;

  private:
    // Slot of the edge (a,b) in horiz_/vert_, or -1 when a,b are not 4-adjacent.
    std::pair<int, int> edge_slot(TerrainCoord a, TerrainCoord b) const;

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> present_;
    // horiz_[id(c)] is the edge c -> c+(1,0); vert_[id(c)] is c -> c+(0,1).
    // Negative marks "no edge".
    std::vector<double> horiz_;
    std::vector<double> vert_;
};

/// w_delta: sum of weights of the terrain edges incident to `c`.
double terrain_vertex_weight(const TerrainGraph &g, TerrainCoord c);

/// The doubled-resolution subcell graph derived from a terrain graph.
/// Edge weights are split evenly from the endpoint cells:
/// w(u,v) = (w_delta(u) + w_delta(v)) / 8.
class DecomposedGraph {
  public:
    DecomposedGraph() = default;

    const TerrainGraph &terrain() const { return terrain_; }
    int width() const { return 2 * terrain_.width(); }
    int height() const { return 2 * terrain_.height(); }
    int slot_count() const { return width() * height(); }

    bool in_bounds(SubCellCoord s) const { return s.col >= 0 && s.row >= 0 && s.col < width() && s.row < height(); }
    VertexId id(SubCellCoord s) const { return s.row * width() + s.col; }
    SubCellCoord coord(VertexId v) const { return {v % width(), v / width()}; }
    bool present(VertexId v) const { return v >= 0 && v < slot_count() && present_[v] != 0; }
    bool present(SubCellCoord s) const { return in_bounds(s) && present_[id(s)] != 0; }

    CellId cell_of(VertexId v) const;
    Quadrant quadrant_of(VertexId v) const { return coord(v).quadrant(); }
    /// Subcell of `cell` at quadrant q (may be absent).
    VertexId subcell(CellId cell, Quadrant q) const;

    /// Present vertices, ascending.
    const std::vector<VertexId> &vertices() const { return vertices_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const;

    /// Present 4-neighbors of v, in the order N, W, E, S (ascending id).
    struct Neighbors {
        std::array<VertexId, 4> ids{};
        int count = 0;
        const VertexId *begin() const { return ids.data(); }
        const VertexId *end() const { return ids.data() + count; }
    };
    Neighbors neighbors(VertexId v) const;
    bool adjacent(VertexId u, VertexId v) const;

    /// Split weight of the edge (u,v); callers guarantee adjacency.
    double edge_weight(VertexId u, VertexId v) const { return (cell_weight_[cell_of(u)] + cell_weight_[cell_of(v)]) / 8.0; }
    /// w_delta of the cell owning v.
    double cell_weight(CellId c) const { return cell_weight_[c]; }

    /// All four subcells of the terrain cell present in D.
    bool cell_complete(CellId c) const;
    bool is_complete() const;
    int present_subcells(CellId c) const;

    bool operator==(const DecomposedGraph &o) const { return terrain_ == o.terrain_ && present_ == o.present_; }

    friend DecomposedGraph decompose_unchecked(const TerrainGraph &g, std::span<const SubCellCoord> blocked);

  private:
    TerrainGraph terrain_;
    std::vector<std::uint8_t> present_;
    std::vector<VertexId> vertices_;
    std::vector<double> cell_weight_;
};

/// Builds D without the connectivity check (diagnostics, generators).
DecomposedGraph decompose_unchecked(const TerrainGraph &g, std::span<const SubCellCoord> blocked);

/// Builds D from G minus `blocked`; throws InstanceError when D is empty or
/// disconnected, or when a blocked subcell has no present parent.
DecomposedGraph build_decomposed_graph(const TerrainGraph &g, std::span<const SubCellCoord> blocked = {});

bool is_complete(const DecomposedGraph &d, TerrainCoord cell);
bool is_complete_graph(const DecomposedGraph &d);

/// Maximal connected components of `vertices` under D's 4-adjacency. Each
/// component is sorted; components are ordered by their smallest vertex.
std::vector<std::vector<VertexId>> connected_components(const DecomposedGraph &d, std::span<const VertexId> vertices);

/// Membership mask helper over D's slot range.
std::vector<std::uint8_t> make_mask(const DecomposedGraph &d, std::span<const VertexId> vertices);

/// True when `vertices` (nonempty) induce a connected subgraph of D.
bool is_connected(const DecomposedGraph &d, std::span<const VertexId> vertices);

std::string to_string(SubCellCoord s);

}  // namespace mcpp
