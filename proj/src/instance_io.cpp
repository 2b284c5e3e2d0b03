#include "mcpp/instance.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mcpp {

using nlohmann::json;

std::vector<VertexId> Instance::root_ids() const {
    std::vector<VertexId> out;
    for (auto r : roots)
        out.push_back(graph.id(r));
    return out;
}

Instance make_instance(std::string name, TerrainGraph terrain, std::vector<SubCellCoord> blocked,
                       std::vector<SubCellCoord> roots, SolverOverrides params) {
    Instance inst;
    inst.name = std::move(name);
    inst.graph = build_decomposed_graph(terrain, blocked);
    inst.terrain = std::move(terrain);
    std::sort(blocked.begin(), blocked.end(), [](SubCellCoord a, SubCellCoord b) {
        return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    blocked.erase(std::unique(blocked.begin(), blocked.end()), blocked.end());
    inst.blocked = std::move(blocked);
    if (roots.empty())
        throw InstanceError("instance needs at least one root");
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (!inst.graph.present(roots[i]))
            throw InstanceError("root " + to_string(roots[i]) + " is not a present subcell");
        for (std::size_t j = 0; j < i; ++j)
            if (roots[j] == roots[i])
                throw InstanceError("roots " + std::to_string(j) + " and " + std::to_string(i) + " coincide at " +
                                    to_string(roots[i]));
    }
    inst.roots = std::move(roots);
    inst.params = std::move(params);
    return inst;
}

namespace {

bool passable(char c) { return c == '.' || c == 'G' || c == 'S'; }
bool known_tile(char c) { return passable(c) || c == '@' || c == 'O' || c == 'T' || c == 'W'; }

TerrainGraph grid_from_rows(const std::vector<std::string> &rows, int first_line) {
    if (rows.empty())
        throw ParseError(first_line, "map has no rows");
    const int width = static_cast<int>(rows.front().size());
    const int height = static_cast<int>(rows.size());
    if (width == 0)
        throw ParseError(first_line, "map rows are empty");
    std::vector<std::uint8_t> present(static_cast<std::size_t>(width * height), 0);
    for (int r = 0; r < height; ++r) {
        if (static_cast<int>(rows[r].size()) != width)
            throw ParseError(first_line + r, "row has " + std::to_string(rows[r].size()) + " cells, expected " +
                                                 std::to_string(width));
        for (int c = 0; c < width; ++c) {
            const char ch = rows[r][c];
            if (!known_tile(ch))
                throw ParseError(first_line + r, std::string("unknown terrain character '") + ch + "'");
            present[r * width + c] = passable(ch);
        }
    }
    return TerrainGraph(width, height, std::move(present));
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r')
        s.pop_back();
    return s;
}

}  // namespace

TerrainGraph parse_map(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int width = -1, height = -1;
    bool have_type = false;
    auto header_value = [&](const std::string &key) {
        std::istringstream fields(line);
        std::string k;
        long long value = 0;
        fields >> k;
        if (k != key || !(fields >> value) || value <= 0)
            throw ParseError(line_no, "malformed header, expected '" + key + " <positive int>'");
        std::string rest;
        if (fields >> rest)
            throw ParseError(line_no, "trailing text after '" + key + "'");
        return static_cast<int>(value);
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty())
            continue;
        if (!have_type) {
            std::istringstream fields(line);
            std::string k, v;
            if (!(fields >> k >> v) || k != "type")
                throw ParseError(line_no, "malformed header, expected 'type <name>'");
            have_type = true;
        } else if (height < 0) {
            height = header_value("height");
        } else if (width < 0) {
            width = header_value("width");
        } else if (line == "map") {
            break;
        } else {
            throw ParseError(line_no, "malformed header, expected 'map'");
        }
    }
    if (width < 0 || line != "map")
        throw ParseError(line_no, "incomplete map header");
    const int first = line_no + 1;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty() && static_cast<int>(rows.size()) == height)
            continue;
        if (static_cast<int>(rows.size()) == height)
            throw ParseError(line_no, "more rows than the declared height " + std::to_string(height));
        if (static_cast<int>(line.size()) != width)
            throw ParseError(line_no, "row has " + std::to_string(line.size()) + " cells, expected " +
                                          std::to_string(width));
        rows.push_back(line);
    }
    if (static_cast<int>(rows.size()) != height)
        throw ParseError(line_no, "expected " + std::to_string(height) + " rows, found " + std::to_string(rows.size()));
    return grid_from_rows(rows, first);
}

std::string write_map(const TerrainGraph &g) {
    std::string out = "type octile\nheight " + std::to_string(g.height()) + "\nwidth " + std::to_string(g.width()) + "\nmap\n";
    for (int r = 0; r < g.height(); ++r) {
        for (int c = 0; c < g.width(); ++c)
            out += g.present({c, r}) ? '.' : '@';
        out += '\n';
    }
    return out;
}

namespace {

SubCellCoord coord_from(const json &j, const char *what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ParseError(0, std::string(what) + " must be a [col, row] integer pair");
    return {j[0].get<int>(), j[1].get<int>()};
}

template <typename T>
std::optional<T> optional_field(const json &obj, const char *key) {
    if (!obj.contains(key))
        return std::nullopt;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        throw ParseError(0, std::string("params.") + key + " has the wrong type");
    }
}

}  // namespace

Instance parse_instance(std::string_view text, const std::filesystem::path &base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(0, std::string("instance is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError(0, "instance must be a JSON object");

    static const std::vector<std::string> kKeys{"name",  "map",   "grid", "default_weight", "weights", "roots",
                                                "blocked_subcells", "params"};
    for (const auto &[key, value] : doc.items())
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
            throw ParseError(0, "unknown instance field '" + key + "'");

    TerrainGraph terrain;
    if (doc.contains("map") == doc.contains("grid"))
        throw ParseError(0, "instance needs exactly one of 'map' or 'grid'");
    if (doc.contains("map")) {
        if (!doc["map"].is_string())
            throw ParseError(0, "'map' must be a path string");
        std::filesystem::path p = doc["map"].get<std::string>();
        if (p.is_relative())
            p = base_dir / p;
        std::ifstream in(p);
        if (!in)
            throw ParseError(0, "cannot open map file " + p.string());
        std::stringstream buf;
        buf << in.rdbuf();
        terrain = parse_map(buf.str());
    } else {
        if (!doc["grid"].is_array())
            throw ParseError(0, "'grid' must be an array of row strings");
        std::vector<std::string> rows;
        for (const auto &row : doc["grid"]) {
            if (!row.is_string())
                throw ParseError(0, "'grid' rows must be strings");
            rows.push_back(row.get<std::string>());
        }
        terrain = grid_from_rows(rows, 0);
    }

    if (doc.contains("default_weight")) {
        if (!doc["default_weight"].is_number())
            throw ParseError(0, "'default_weight' must be a number");
        std::vector<std::uint8_t> present;
        for (int r = 0; r < terrain.height(); ++r)
            for (int c = 0; c < terrain.width(); ++c)
                present.push_back(terrain.present({c, r}));
        try {
            terrain = TerrainGraph(terrain.width(), terrain.height(), present, doc["default_weight"].get<double>());
        } catch (const std::invalid_argument &e) {
            throw ParseError(0, e.what());
        }
    }
    if (doc.contains("weights")) {
        if (!doc["weights"].is_array())
            throw ParseError(0, "'weights' must be an array");
        for (const auto &w : doc["weights"]) {
            if (!w.is_object() || !w.contains("from") || !w.contains("to") || !w.contains("w") || !w["w"].is_number())
                throw ParseError(0, "each weight needs 'from', 'to' and numeric 'w'");
            auto a = coord_from(w["from"], "weights.from");
            auto b = coord_from(w["to"], "weights.to");
            try {
                terrain.set_edge_weight({a.col, a.row}, {b.col, b.row}, w["w"].get<double>());
            } catch (const std::invalid_argument &e) {
                throw ParseError(0, std::string("bad weight entry: ") + e.what());
            }
        }
    }

    std::vector<SubCellCoord> blocked;
    if (doc.contains("blocked_subcells")) {
        if (!doc["blocked_subcells"].is_array())
            throw ParseError(0, "'blocked_subcells' must be an array");
        for (const auto &b : doc["blocked_subcells"])
            blocked.push_back(coord_from(b, "blocked_subcells entry"));
    }
    if (!doc.contains("roots") || !doc["roots"].is_array())
        throw ParseError(0, "instance needs a 'roots' array");
    std::vector<SubCellCoord> roots;
    for (const auto &r : doc["roots"])
        roots.push_back(coord_from(r, "roots entry"));
    std::sort(blocked.begin(), blocked.end());
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (std::binary_search(blocked.begin(), blocked.end(), roots[i]))
            throw InstanceError("root " + std::to_string(i) + " sits on blocked subcell " + to_string(roots[i]));

    SolverOverrides params;
    if (doc.contains("params")) {
        const json &p = doc["params"];
        if (!p.is_object())
            throw ParseError(0, "'params' must be an object");
        params.iterations = optional_field<int>(p, "iters");
        params.dedup_period = optional_field<int>(p, "dedup_period");
        params.gamma = optional_field<double>(p, "gamma");
        params.final_temperature = optional_field<double>(p, "alpha_end");
        params.seed = optional_field<std::uint64_t>(p, "seed");
        params.init = optional_field<std::string>(p, "init");
    }
    std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "instance";
    return make_instance(std::move(name), std::move(terrain), std::move(blocked), std::move(roots), std::move(params));
}

Instance load_instance(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open instance file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    Instance inst = parse_instance(buf.str(), path.parent_path());
    if (inst.name == "instance")
        inst.name = path.stem().string();
    return inst;
}

std::string serialize_instance(const Instance &inst) {
    const TerrainGraph &g = inst.terrain;
    json doc;
    doc["name"] = inst.name;
    json rows = json::array();
    for (int r = 0; r < g.height(); ++r) {
        std::string row;
        for (int c = 0; c < g.width(); ++c)
            row += g.present({c, r}) ? '.' : '@';
        rows.push_back(row);
    }
    doc["grid"] = rows;
    json weights = json::array();
    for (int r = 0; r < g.height(); ++r) {
        for (int c = 0; c < g.width(); ++c) {
            for (TerrainCoord n : {TerrainCoord{c + 1, r}, TerrainCoord{c, r + 1}}) {
                auto w = g.edge_weight({c, r}, n);
                if (w && *w != 1.0)
                    weights.push_back({{"from", {c, r}}, {"to", {n.col, n.row}}, {"w", *w}});
            }
        }
    }
    if (!weights.empty())
        doc["weights"] = weights;
    json roots = json::array();
    for (auto s : inst.roots)
        roots.push_back({s.col, s.row});
    doc["roots"] = roots;
    if (!inst.blocked.empty()) {
        json blocked = json::array();
        for (auto s : inst.blocked)
            blocked.push_back({s.col, s.row});
        doc["blocked_subcells"] = blocked;
    }
    json params = json::object();
    const auto &p = inst.params;
    if (p.iterations)
        params["iters"] = *p.iterations;
    if (p.dedup_period)
        params["dedup_period"] = *p.dedup_period;
    if (p.gamma)
        params["gamma"] = *p.gamma;
    if (p.final_temperature)
        params["alpha_end"] = *p.final_temperature;
    if (p.seed)
        params["seed"] = *p.seed;
    if (p.init)
        params["init"] = *p.init;
    if (!params.empty())
        doc["params"] = params;
    return doc.dump(2) + "\n";
}

std::vector<SubCellCoord> blocked_subcells(const DecomposedGraph &d) {
    std::vector<SubCellCoord> out;
    for (VertexId v = 0; v < d.slot_count(); ++v) {
        const SubCellCoord s = d.coord(v);
        if (!d.present(v) && d.terrain().present(s.parent()))
            out.push_back(s);
    }
    return out;
}

DecomposedGraph make_incomplete(const DecomposedGraph &d, double fraction, Rng &rng, std::span<const VertexId> keep) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw std::invalid_argument("incompleteness fraction must lie in [0, 1]");
    constexpr int kRetries = 32;
    const TerrainGraph &terrain = d.terrain();
    std::vector<TerrainCoord> cells = terrain.cells();
    const auto target = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(cells.size()) - 1e-12));
    // Partial Fisher-Yates picks the cells to corrupt.
    for (std::size_t i = 0; i < target && i < cells.size(); ++i)
        std::swap(cells[i], cells[i + rng.below(cells.size() - i)]);
    cells.resize(std::min(target, cells.size()));

    std::vector<SubCellCoord> blocked = blocked_subcells(d);
    DecomposedGraph current = d;
    for (TerrainCoord cell : cells) {
        for (int attempt = 0; attempt < kRetries; ++attempt) {
            std::vector<SubCellCoord> candidates;
            for (Quadrant q : {NW, NE, SW, SE}) {
                SubCellCoord s = SubCellCoord::of(cell, q);
                if (current.present(s) &&
                    std::find(keep.begin(), keep.end(), current.id(s)) == keep.end())
                    candidates.push_back(s);
            }
            const int how_many = 1 + static_cast<int>(rng.below(3));
            const int present_now = current.present_subcells(terrain.id(cell));
            if (how_many >= present_now || how_many > static_cast<int>(candidates.size()))
                continue;
            for (int k = 0; k < how_many; ++k)
                std::swap(candidates[k], candidates[k + rng.below(candidates.size() - k)]);
            std::vector<SubCellCoord> trial = blocked;
            trial.insert(trial.end(), candidates.begin(), candidates.begin() + how_many);
            DecomposedGraph next = decompose_unchecked(terrain, trial);
            if (!is_connected(next, next.vertices()))
                continue;
            blocked = std::move(trial);
            current = std::move(next);
            break;
        }
    }
    return current;
}

Instance random_instance(const RandomInstanceSpec &spec, std::uint64_t seed, std::string name) {
    if (spec.width <= 0 || spec.height <= 0 || spec.robots <= 0)
        throw std::invalid_argument("random instance needs positive dimensions and robot count");
    Rng rng(seed);
    const int w = spec.width, h = spec.height;
    std::vector<std::uint8_t> open(static_cast<std::size_t>(w * h), 1);
    for (auto &cell : open)
        cell = rng.uniform() >= spec.obstacle_density;

    // Keep the largest 4-connected component (lowest id wins ties).
    std::vector<int> label(open.size(), -1);
    int best_label = -1;
    std::size_t best_size = 0;
    for (int s = 0; s < w * h; ++s) {
        if (!open[s] || label[s] >= 0)
            continue;
        std::vector<int> stack{s};
        label[s] = s;
        std::size_t n = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++n;
            const int c = v % w, r = v / w;
            const int nbrs[4][2] = {{c, r - 1}, {c - 1, r}, {c + 1, r}, {c, r + 1}};
            for (auto &nb : nbrs) {
                if (nb[0] < 0 || nb[1] < 0 || nb[0] >= w || nb[1] >= h)
                    continue;
                int u = nb[1] * w + nb[0];
                if (open[u] && label[u] < 0) {
                    label[u] = s;
                    stack.push_back(u);
                }
            }
        }
        if (n > best_size) {
            best_size = n;
            best_label = s;
        }
    }
    if (best_label < 0) {
        // Everything came up blocked; fall back to a single open cell.
        open.assign(open.size(), 0);
        open[0] = 1;
        label[0] = best_label = 0;
    }
    std::vector<std::uint8_t> present(open.size());
    for (std::size_t i = 0; i < open.size(); ++i)
        present[i] = open[i] && label[i] == best_label;

    TerrainGraph terrain(w, h, present);
    if (spec.weighted) {
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                for (TerrainCoord n : {TerrainCoord{c + 1, r}, TerrainCoord{c, r + 1}})
                    if (terrain.edge_weight({c, r}, n))
                        terrain.set_edge_weight({c, r}, n, 1.0 + 9.0 * rng.uniform());
    }
    DecomposedGraph d = build_decomposed_graph(terrain);
    if (spec.incomplete_fraction > 0.0)
        d = make_incomplete(d, spec.incomplete_fraction, rng);

    std::vector<VertexId> pool = d.vertices();
    if (static_cast<int>(pool.size()) < spec.robots)
        throw std::invalid_argument("random instance has fewer subcells than robots");
    std::vector<SubCellCoord> roots;
    for (int i = 0; i < spec.robots; ++i) {
        std::size_t k = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[k]);
        roots.push_back(d.coord(pool[i]));
    }
    if (name.empty())
        name = "rand" + std::to_string(w) + "x" + std::to_string(h) + "_k" + std::to_string(spec.robots) + "_s" +
               std::to_string(seed);
    return make_instance(std::move(name), std::move(terrain), blocked_subcells(d), std::move(roots));
}

}  // namespace mcpp
