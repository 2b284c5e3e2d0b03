#include "mcpp/results.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace mcpp {

using nlohmann::json;

std::pair<double, double> mean_std(std::span<const double> values) {
    if (values.empty())
        return {0.0, 0.0};
    double sum = 0.0;
    for (double v : values)
        sum += v;
    const double mean = sum / static_cast<double>(values.size());
    if (values.size() < 2)
        return {mean, 0.0};
    double sq = 0.0;
    for (double v : values)
        sq += (v - mean) * (v - mean);
    return {mean, std::sqrt(sq / static_cast<double>(values.size() - 1))};
}

void sort_records(std::vector<RunRecord> &records) {
    std::stable_sort(records.begin(), records.end(), [](const RunRecord &a, const RunRecord &b) {
        return std::tie(a.instance, a.algorithm, a.seed) < std::tie(b.instance, b.algorithm, b.seed);
    });
}

std::vector<Summary> summarize(std::span<const RunRecord> records) {
    std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> groups;
    std::map<std::pair<std::string, std::string>, int> failures;
    for (const auto &r : records) {
        auto key = std::make_pair(r.instance, r.algorithm);
        auto &g = groups[key];
        if (r.ok()) {
            g.first.push_back(r.makespan);
            g.second.push_back(r.runtime_ms);
        } else {
            ++failures[key];
        }
    }
    std::vector<Summary> out;
    for (const auto &[key, values] : groups) {
        Summary s;
        s.instance = key.first;
        s.algorithm = key.second;
        s.runs = static_cast<int>(values.first.size());
        s.failures = failures[key];
        std::tie(s.makespan_mean, s.makespan_std) = mean_std(values.first);
        std::tie(s.runtime_mean, s.runtime_std) = mean_std(values.second);
        out.push_back(s);
    }
    return out;
}

std::string format_number(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string write_results_csv(std::vector<RunRecord> records) {
    if (records.empty())
        throw std::invalid_argument("no results to write");
    sort_records(records);
    std::string out = "instance,algorithm,seed,makespan,runtime_ms,iterations,makespan_std,runtime_ms_std,error\n";
    for (const auto &r : records) {
        out += csv_field(r.instance) + ',' + csv_field(r.algorithm) + ',' + std::to_string(r.seed) + ',';
        if (r.ok())
            out += format_number(r.makespan) + ',' + format_number(r.runtime_ms) + ',' + std::to_string(r.iterations);
        else
            out += ",,";
        out += ",,," + csv_field(r.error) + '\n';
    }
    for (const auto &s : summarize(records)) {
        out += csv_field(s.instance) + ',' + csv_field(s.algorithm) + ",agg,";
        if (s.runs > 0)
            out += format_number(s.makespan_mean) + ',' + format_number(s.runtime_mean) + ",," +
                   format_number(s.makespan_std) + ',' + format_number(s.runtime_std) + ',';
        else
            out += ",,,,,";
        out += s.failures > 0 ? std::to_string(s.failures) + " failed runs" : "";
        out += '\n';
    }
    return out;
}

std::string write_report(std::vector<RunRecord> records) {
    if (records.empty())
        throw std::invalid_argument("no results to report");
    auto summaries = summarize(records);
    std::vector<std::string> algorithms;
    for (const auto &s : summaries)
        if (std::find(algorithms.begin(), algorithms.end(), s.algorithm) == algorithms.end())
            algorithms.push_back(s.algorithm);
    std::sort(algorithms.begin(), algorithms.end());

    auto fixed = [](double x, int digits) {
        std::ostringstream os;
        os.setf(std::ios::fixed);
        os.precision(digits);
        os << x;
        return os.str();
    };
    std::ostringstream os;
    os << "instance";
    for (const auto &a : algorithms)
        os << " | " << a;
    os << "\n";
    std::string current;
    for (std::size_t i = 0; i < summaries.size();) {
        current = summaries[i].instance;
        std::map<std::string, const Summary *> row;
        for (; i < summaries.size() && summaries[i].instance == current; ++i)
            row[summaries[i].algorithm] = &summaries[i];
        os << current;
        for (const auto &a : algorithms) {
            auto it = row.find(a);
            os << " | ";
            if (it == row.end() || it->second->runs == 0)
                os << "-";
            else
                os << fixed(it->second->makespan_mean, 2) << "±" << fixed(it->second->makespan_std, 2);
        }
        os << "\n";
        os << std::string(current.size(), ' ');
        for (const auto &a : algorithms) {
            auto it = row.find(a);
            os << " | ";
            if (it == row.end() || it->second->runs == 0)
                os << "-";
            else
                os << fixed(it->second->runtime_mean, 1) << "ms";
        }
        os << "\n";
    }
    return os.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

namespace {

json coords(const DecomposedGraph &d, std::span<const VertexId> vs) {
    json arr = json::array();
    for (VertexId v : vs) {
        SubCellCoord s = d.coord(v);
        arr.push_back({s.col, s.row});
    }
    return arr;
}

std::vector<VertexId> ids(const DecomposedGraph &d, const json &arr) {
    if (!arr.is_array())
        throw ParseError(0, "expected an array of [col, row] pairs");
    std::vector<VertexId> out;
    for (const auto &c : arr) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
            throw ParseError(0, "expected a [col, row] integer pair");
        SubCellCoord s{c[0].get<int>(), c[1].get<int>()};
        if (!d.present(s))
            throw ParseError(0, "subcell " + to_string(s) + " is not in the instance");
        out.push_back(d.id(s));
    }
    return out;
}

}  // namespace

std::string serialize_solution(const DecomposedGraph &d, const Solution &s) {
    json doc;
    doc["makespan"] = s.makespan;
    doc["seed"] = s.seed;
    doc["iterations"] = s.iterations_run;
    json robots = json::array();
    for (std::size_t i = 0; i < s.roots.size(); ++i) {
        json r;
        r["root"] = coords(d, std::span(&s.roots[i], 1))[0];
        r["cost"] = s.paths[i].cost();
        r["subgraph"] = coords(d, s.subgraphs[i]);
        r["walk"] = coords(d, s.paths[i].vertices());
        robots.push_back(r);
    }
    doc["robots"] = robots;
    return doc.dump(1) + "\n";
}

Solution parse_solution(const DecomposedGraph &d, std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(0, std::string("solution is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("robots") || !doc["robots"].is_array())
        throw ParseError(0, "solution needs a 'robots' array");
    Solution s;
    for (const auto &r : doc["robots"]) {
        if (!r.is_object() || !r.contains("root") || !r.contains("subgraph") || !r.contains("walk"))
            throw ParseError(0, "each robot needs 'root', 'subgraph' and 'walk'");
        s.roots.push_back(ids(d, json::array({r["root"]}))[0]);
        s.subgraphs.push_back(ids(d, r["subgraph"]));
        try {
            s.paths.emplace_back(d, ids(d, r["walk"]));
        } catch (const std::logic_error &e) {
            throw ParseError(0, std::string("invalid walk: ") + e.what());
        }
    }
    s.makespan = makespan_of(s.paths);
    if (doc.contains("seed") && doc["seed"].is_number_unsigned())
        s.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("iterations") && doc["iterations"].is_number_integer())
        s.iterations_run = doc["iterations"].get<int>();
    return s;
}

std::string write_trace_csv(std::span<const IterationTrace> trace) {
    std::string out = "iteration,pool,operator,delta,accepted,makespan\n";
    for (const auto &t : trace) {
        out += std::to_string(t.iteration) + ',' + std::to_string(t.pool) + ',' +
               (t.pool >= 0 ? to_string(t.kind) : "") + ',' + format_number(t.delta) + ',' +
               (t.accepted ? "1" : "0") + ',' + format_number(t.makespan) + '\n';
    }
    return out;
}

}  // namespace mcpp
