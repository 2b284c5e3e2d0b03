#include "mcpp/svg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mcpp {

namespace {

constexpr int kCell = 20;
constexpr int kHalf = kCell / 2;

std::string fixed2(double x) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << x;
    return os.str();
}

// Subcell centre in drawing units.
std::pair<double, double> centre(SubCellCoord s) { return {s.col * kHalf + kHalf / 2.0, s.row * kHalf + kHalf / 2.0}; }

std::string star_points(double cx, double cy, double outer) {
    std::string pts;
    const double inner = outer * 0.45;
    for (int k = 0; k < 10; ++k) {
        const double r = k % 2 == 0 ? outer : inner;
        const double a = -std::numbers::pi / 2 + k * std::numbers::pi / 5;
        if (k)
            pts += ' ';
        pts += fixed2(cx + r * std::cos(a)) + ',' + fixed2(cy + r * std::sin(a));
    }
    return pts;
}

}  // namespace

std::string render_svg(const Instance &inst, const Solution &solution) {
    const TerrainGraph &g = inst.terrain;
    const DecomposedGraph &d = inst.graph;
    const int w = g.width() * kCell, h = g.height() * kCell;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    os << "<g id=\"terrain\" stroke=\"#999999\" stroke-width=\"0.5\">\n";
    for (int r = 0; r < g.height(); ++r)
        for (int c = 0; c < g.width(); ++c)
            os << "<rect x=\"" << c * kCell << "\" y=\"" << r * kCell << "\" width=\"" << kCell << "\" height=\""
               << kCell << "\" fill=\"" << (g.present({c, r}) ? "#ffffff" : "#404040") << "\"/>\n";
    os << "</g>\n<g id=\"blocked\" fill=\"#b0b0b0\">\n";
    for (SubCellCoord s : blocked_subcells(d))
        os << "<rect x=\"" << s.col * kHalf << "\" y=\"" << s.row * kHalf << "\" width=\"" << kHalf << "\" height=\""
           << kHalf << "\"/>\n";
    os << "</g>\n<g id=\"paths\" fill=\"none\" stroke-width=\"2\" stroke-linejoin=\"round\">\n";
    for (std::size_t i = 0; i < solution.paths.size(); ++i) {
        const auto closed = solution.paths[i].closed();
        os << "<polyline stroke=\"" << kRobotPalette[i % kRobotPalette.size()] << "\" points=\"";
        for (std::size_t k = 0; k < closed.size(); ++k) {
            auto [x, y] = centre(d.coord(closed[k]));
            os << (k ? " " : "") << fixed2(x) << ',' << fixed2(y);
        }
        os << "\"/>\n";
    }
    os << "</g>\n<g id=\"roots\" stroke=\"#000000\" stroke-width=\"0.5\">\n";
    const auto roots = inst.root_ids();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        auto [x, y] = centre(d.coord(roots[i]));
        os << "<polygon fill=\"" << kRobotPalette[i % kRobotPalette.size()] << "\" points=\""
           << star_points(x, y, kHalf * 0.45) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace mcpp
