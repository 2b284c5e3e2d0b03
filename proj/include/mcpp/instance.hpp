#pragma once

#include "mcpp/grid.hpp"
#include "mcpp/rng.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcpp {

/// Parse failure; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string &what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Solver settings an instance file may carry.
struct SolverOverrides {
    std::optional<int> iterations;
    std::optional<int> dedup_period;
    std::optional<double> gamma;
    std::optional<double> final_temperature;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> init;
    bool operator==(const SolverOverrides &) const = default;
};

/// An MCPP instance (G, D, R).
struct Instance {
    std::string name;
    TerrainGraph terrain;
    std::vector<SubCellCoord> blocked;
    DecomposedGraph graph;
    std::vector<SubCellCoord> roots;
    SolverOverrides params;

    std::vector<VertexId> root_ids() const;
    int robot_count() const { return static_cast<int>(roots.size()); }
};

/// Validates and assembles an instance: D connected, roots distinct and present.
Instance make_instance(std::string name, TerrainGraph terrain, std::vector<SubCellCoord> blocked,
                       std::vector<SubCellCoord> roots, SolverOverrides params = {});

/// 2D pathfinding benchmark map ("type/height/width/map" header). '.', 'G'
/// and 'S' are passable; '@', 'O', 'T' and 'W' are not. Edges weigh 1.
TerrainGraph parse_map(std::string_view text);
std::string write_map(const TerrainGraph &g);

/// JSON instance: {"name", "map" (path) | "grid" (rows), "default_weight",
/// "weights": [{"from":[c,r],"to":[c,r],"w":x}], "roots": [[c,r]...],
/// "blocked_subcells": [[c,r]...], "params": {...}}. Relative map paths
/// resolve against `base_dir`.
Instance parse_instance(std::string_view text, const std::filesystem::path &base_dir = {});
Instance load_instance(const std::filesystem::path &path);
std::string serialize_instance(const Instance &inst);

/// Subcells absent from D although their terrain cell is present.
std::vector<SubCellCoord> blocked_subcells(const DecomposedGraph &d);

/// Corrupts ceil(fraction * |V_g|) terrain cells by removing 1-3 random
/// subcells from each, redrawing a removal that would disconnect D (bounded
/// retries) and never touching `keep`.
DecomposedGraph make_incomplete(const DecomposedGraph &d, double fraction, Rng &rng,
                                std::span<const VertexId> keep = {});

struct RandomInstanceSpec {
    int width = 10;
    int height = 10;
    double obstacle_density = 0.0;
    bool weighted = false;  // edge weights uniform in [1, 10]
    double incomplete_fraction = 0.0;
    int robots = 2;
};

/// Random instance: obstacles are kept only on the largest terrain component,
/// then corruption, then distinct random roots.
Instance random_instance(const RandomInstanceSpec &spec, std::uint64_t seed, std::string name = {});

}  // namespace mcpp
