#pragma once

#include "mcpp/instance.hpp"
#include "mcpp/local_search.hpp"

#include <array>
#include <string>

namespace mcpp {

inline constexpr std::array<const char *, 10> kRobotPalette{
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

/// SVG 1.1 drawing: terrain cells as squares, blocked subcells shaded, one
/// closed polyline per robot walk (palette color i mod 10), roots as stars.
/// Pass an empty Solution for a map-only drawing.
std::string render_svg(const Instance &inst, const Solution &solution);

}  // namespace mcpp
