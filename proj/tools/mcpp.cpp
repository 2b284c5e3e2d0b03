// mcpp: command-line front end for the multi-robot coverage planner.

#include "mcpp/bench.hpp"
#include "mcpp/estc.hpp"
#include "mcpp/init.hpp"
#include "mcpp/instance.hpp"
#include "mcpp/local_search.hpp"
#include "mcpp/oracle.hpp"
#include "mcpp/results.hpp"
#include "mcpp/svg.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace mcpp;

namespace {

fs::path default_out_dir() {
    const char *env = std::getenv("MCPP_OUT_DIR");
    return env && *env ? fs::path(env) : fs::path();
}

// Explicit path wins; otherwise MCPP_OUT_DIR/<fallback_name>; otherwise none.
fs::path output_path(const std::string &given, const std::string &fallback_name) {
    if (!given.empty())
        return given;
    fs::path dir = default_out_dir();
    return dir.empty() ? fs::path() : dir / fallback_name;
}

void emit(const fs::path &path, const std::string &text) {
    if (path.empty())
        std::cout << text;
    else
        write_text_file(path, text);
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct SolveOptions {
    std::string instance;
    std::string init = "greedy";
    int iterations = 3000;
    int dedup_period = 100;
    double gamma = 0.01;
    double alpha_end = 0.2;
    std::uint64_t seed = 0;
    std::string out;
    std::string svg;
    std::string trace;
    std::string solution;
    bool no_search = false;
};

// Command-line flags take precedence over instance params only when given.
void add_search_flags(CLI::App *cmd, SolveOptions &o, bool with_init = true) {
    if (with_init)
        cmd->add_option("--init", o.init, "initializer: vor or greedy")->check(CLI::IsMember({"vor", "voronoi", "greedy"}));
    cmd->add_option("--iters", o.iterations, "local search iterations M")->check(CLI::PositiveNumber);
    cmd->add_option("--dedup-period", o.dedup_period, "forced deduplication period S")->check(CLI::PositiveNumber);
    cmd->add_option("--gamma", o.gamma, "pool weight learning rate")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--alpha-end", o.alpha_end, "final temperature")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--seed", o.seed, "random seed");
}

int run_solve(CLI::App *cmd, SolveOptions &o) {
    Instance inst = load_instance(o.instance);
    const auto &p = inst.params;
    auto pick = [&](const char *flag, auto cli_value, auto file_value) {
        return cmd->count(flag) > 0 ? cli_value : file_value.value_or(cli_value);
    };
    const int iters = pick("--iters", o.iterations, p.iterations);
    const int period = pick("--dedup-period", o.dedup_period, p.dedup_period);
    const double gamma = pick("--gamma", o.gamma, p.gamma);
    const double alpha_end = pick("--alpha-end", o.alpha_end, p.final_temperature);
    const std::uint64_t seed = pick("--seed", o.seed, p.seed);
    const std::string init_name = pick("--init", o.init, p.init);
    const SearchParams params = SearchParams::make(iters, period, gamma, alpha_end, seed);
    const InitKind init = parse_init_kind(init_name);

    const auto start = std::chrono::steady_clock::now();
    const auto roots = inst.root_ids();
    Solution initial = initial_solution(make_initial_partition(init, inst.graph, roots));
    initial.seed = seed;
    std::vector<IterationTrace> trace;
    Solution s = o.no_search ? initial : ls_mcpp(inst.graph, initial, params, o.trace.empty() ? nullptr : &trace);
    const auto stop = std::chrono::steady_clock::now();
    if (auto err = check_solution(inst.graph, s); !err.empty())
        throw std::logic_error("solver produced an invalid solution: " + err);

    RunRecord rec;
    rec.instance = inst.name;
    rec.algorithm = o.no_search ? init_name : "ls-" + std::string(to_string(init));
    rec.seed = seed;
    rec.makespan = s.makespan;
    rec.initial_makespan = initial.makespan;
    rec.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rec.iterations = s.iterations_run;

    emit(output_path(o.out, inst.name + ".csv"), write_results_csv({rec}));
    if (!o.svg.empty())
        write_text_file(o.svg, render_svg(inst, s));
    if (!o.trace.empty())
        write_text_file(o.trace, write_trace_csv(trace));
    if (!o.solution.empty())
        write_text_file(o.solution, serialize_solution(inst.graph, s));
    std::cerr << "makespan " << format_number(s.makespan) << " (initial " << format_number(initial.makespan)
              << "), runtime " << format_number(rec.runtime_ms) << " ms\n";
    return 0;
}

std::vector<std::uint64_t> parse_seed_range(const std::string &text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                seeds.push_back(std::stoull(part));
            } else {
                const auto lo = std::stoull(part.substr(0, dash)), hi = std::stoull(part.substr(dash + 1));
                if (hi < lo)
                    throw std::invalid_argument("empty range");
                for (auto s = lo; s <= hi; ++s)
                    seeds.push_back(s);
            }
        } catch (const std::exception &) {
            throw std::invalid_argument("bad seed list '" + text + "' (expected e.g. 0-11 or 1,3,5)");
        }
    }
    if (seeds.empty())
        throw std::invalid_argument("empty seed list");
    return seeds;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multi-robot coverage path planning on incomplete grids"};
    app.require_subcommand(1);

    SolveOptions solve;
    auto *solve_cmd = app.add_subcommand("solve", "initializer + local search on one instance");
    solve_cmd->add_option("instance", solve.instance, "instance JSON file")->required();
    add_search_flags(solve_cmd, solve);
    solve_cmd->add_option("--out", solve.out, "CSV output path (default: $MCPP_OUT_DIR/<name>.csv or stdout)");
    solve_cmd->add_option("--svg", solve.svg, "write an SVG drawing of the solution");
    solve_cmd->add_option("--trace", solve.trace, "write a per-iteration trace CSV");
    solve_cmd->add_option("--solution", solve.solution, "write the solution as JSON");
    solve_cmd->add_flag("--no-search", solve.no_search, "stop after the initializer");

    std::vector<std::string> bench_instances;
    std::string bench_seeds = "0-11", bench_out, bench_report;
    std::vector<std::string> bench_algorithms{"greedy", "ls-greedy"};
    bool bench_serial = false;
    SolveOptions bench_opts;
    auto *bench_cmd = app.add_subcommand("bench", "run instances x algorithms x seeds");
    bench_cmd->add_option("instances", bench_instances, "instance JSON files")->required();
    bench_cmd->add_option("--seeds", bench_seeds, "seed list or range, e.g. 0-11");
    bench_cmd->add_option("--algorithms", bench_algorithms, "vor, greedy, ls-vor, ls-greedy")->delimiter(',');
    add_search_flags(bench_cmd, bench_opts, false);
    bench_cmd->add_flag("--serial", bench_serial, "run sequentially instead of on a worker group");
    bench_cmd->add_option("--out", bench_out, "CSV output path (default: $MCPP_OUT_DIR/bench.csv or stdout)");
    bench_cmd->add_option("--report", bench_report, "write the mean±std table here");

    RandomInstanceSpec gen_spec;
    std::uint64_t gen_seed = 0;
    std::string gen_out, gen_name;
    auto *gen_cmd = app.add_subcommand("gen", "generate a random instance");
    gen_cmd->add_option("--width", gen_spec.width)->check(CLI::PositiveNumber);
    gen_cmd->add_option("--height", gen_spec.height)->check(CLI::PositiveNumber);
    gen_cmd->add_option("--obstacles", gen_spec.obstacle_density, "obstacle probability per cell")->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_flag("--weighted", gen_spec.weighted, "random edge weights in [1, 10]");
    gen_cmd->add_option("--incomplete", gen_spec.incomplete_fraction, "fraction of corrupted cells")->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--robots", gen_spec.robots)->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen_seed);
    gen_cmd->add_option("--name", gen_name);
    gen_cmd->add_option("--out", gen_out, "output path (default: stdout)");

    std::string corrupt_in, corrupt_out;
    double corrupt_fraction = 0.2;
    std::uint64_t corrupt_seed = 0;
    auto *corrupt_cmd = app.add_subcommand("corrupt", "remove random subcells from an instance");
    corrupt_cmd->add_option("instance", corrupt_in)->required();
    corrupt_cmd->add_option("--fraction", corrupt_fraction)->check(CLI::Range(0.0, 1.0));
    corrupt_cmd->add_option("--seed", corrupt_seed);
    corrupt_cmd->add_option("--out", corrupt_out, "output path (default: stdout)");

    std::string estc_in;
    int estc_robot = 0;
    bool estc_full = false;
    auto *estc_cmd = app.add_subcommand("estc", "single-robot coverage walk over the whole instance");
    estc_cmd->add_option("instance", estc_in)->required();
    estc_cmd->add_option("--robot", estc_robot, "whose root to start from")->check(CLI::NonNegativeNumber);
    estc_cmd->add_flag("--full-stc", estc_full, "use the weight-agnostic spanning tree");

    std::string oracle_in;
    auto *oracle_cmd = app.add_subcommand("oracle", "exact optimum by exhaustive search (tiny instances)");
    oracle_cmd->add_option("instance", oracle_in)->required();

    std::string render_in, render_solution, render_out;
    auto *render_cmd = app.add_subcommand("render", "draw an instance and optionally a solution as SVG");
    render_cmd->add_option("instance", render_in)->required();
    render_cmd->add_option("--solution", render_solution, "solution JSON written by solve");
    render_cmd->add_option("--out", render_out, "output path (default: $MCPP_OUT_DIR/<name>.svg or stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (*solve_cmd)
            return run_solve(solve_cmd, solve);

        if (*bench_cmd) {
            BenchConfig cfg;
            cfg.algorithms.clear();
            for (const auto &a : bench_algorithms)
                cfg.algorithms.push_back(parse_algorithm(a));
            cfg.seeds = parse_seed_range(bench_seeds);
            cfg.iterations = bench_opts.iterations;
            cfg.dedup_period = bench_opts.dedup_period;
            cfg.gamma = bench_opts.gamma;
            cfg.final_temperature = bench_opts.alpha_end;
            cfg.exec = bench_serial ? Execution::Serial : Execution::Parallel;
            std::vector<Instance> instances;
            for (const auto &path : bench_instances)
                instances.push_back(load_instance(path));
            auto records = run_benchmark(instances, cfg);
            emit(output_path(bench_out, "bench.csv"), write_results_csv(records));
            const std::string report = write_report(records);
            if (!bench_report.empty())
                write_text_file(bench_report, report);
            else
                std::cerr << report;
            int failed = 0;
            for (const auto &r : records)
                failed += !r.ok();
            if (failed)
                std::cerr << failed << " of " << records.size() << " runs failed\n";
            return 0;
        }

        if (*gen_cmd) {
            Instance inst = random_instance(gen_spec, gen_seed, gen_name);
            emit(gen_out, serialize_instance(inst));
            return 0;
        }

        if (*corrupt_cmd) {
            Instance inst = load_instance(corrupt_in);
            Rng rng(corrupt_seed);
            const auto roots = inst.root_ids();
            DecomposedGraph d = make_incomplete(inst.graph, corrupt_fraction, rng, roots);
            Instance out = make_instance(inst.name, inst.terrain, blocked_subcells(d), inst.roots, inst.params);
            emit(corrupt_out, serialize_instance(out));
            return 0;
        }

        if (*estc_cmd) {
            Instance inst = load_instance(estc_in);
            if (estc_robot >= inst.robot_count())
                throw std::invalid_argument("instance has only " + std::to_string(inst.robot_count()) + " roots");
            const VertexId root = inst.root_ids()[estc_robot];
            CoveragePath path = estc_full ? full_stc_path(inst.graph, inst.graph.vertices(), root)
                                          : estc_path(inst.graph, inst.graph.vertices(), root);
            std::cout << "cost " << format_number(path.cost()) << "\nlength " << path.length() << "\nwalk";
            for (VertexId v : path.vertices())
                std::cout << ' ' << to_string(inst.graph.coord(v));
            std::cout << "\n";
            return 0;
        }

        if (*oracle_cmd) {
            Instance inst = load_instance(oracle_in);
            const auto roots = inst.root_ids();
            const double best = roots.size() == 1 ? oracle_single_cover(inst.graph, roots[0])
                                                  : oracle_mcpp(inst.graph, roots);
            std::cout << "optimal makespan " << format_number(best) << "\n";
            return 0;
        }

        if (*render_cmd) {
            Instance inst = load_instance(render_in);
            Solution s;
            if (!render_solution.empty()) {
                s = parse_solution(inst.graph, read_file(render_solution));
                if (auto err = check_solution(inst.graph, s); !err.empty())
                    throw std::invalid_argument("solution does not fit the instance: " + err);
            }
            emit(output_path(render_out, inst.name + ".svg"), render_svg(inst, s));
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
