// pcsa: piecewise-constant signal approximation experiments.
//
//   pcsa approx  --source chirp --n 10 --method db
//   pcsa sweep   --source chirp --n-list 5,10,20 --runs 50 --seed 1 --jobs 4
//   pcsa balance --source csv:four.csv --n 2 --method dp
//
// Exit codes: 0 success, 1 I/O or numeric failure, 2 usage error.

#include "pcsa/approximation.hpp"
#include "pcsa/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct Options
{
    std::string source;
    std::size_t n = 0;
    std::string n_list;
    std::string method = "db";
    std::size_t runs = 0;
    std::uint64_t seed = 0;
    std::size_t cells = 0;
    std::size_t refine = 4;
    double sigma = 0.0;
    std::uint64_t noise_seed = 1;
    std::size_t jobs = 1;
    std::string out_prefix;
    bool oracle = false;
    std::vector<double> domain;
    pcsa::SwarmConfig swarm;
};

void add_source_flags(CLI::App& cmd, Options& o)
{
    cmd.add_option("--source", o.source, "chirp | ramp | steps:<count>:<seed> | csv:<path> | pgm:<path>:<row>")
        ->required();
    cmd.add_option("--cells", o.cells, "cell count for generated signals");
    cmd.add_option("--domain", o.domain, "domain a b for csv sources")->expected(2);
    cmd.add_option("--sigma", o.sigma, "standard deviation of additive Gaussian noise")->check(CLI::NonNegativeNumber);
    cmd.add_option("--noise-seed", o.noise_seed, "seed of the noise generator");
}

void add_solver_flags(CLI::App& cmd, Options& o)
{
    cmd.add_option("--seed", o.seed, "base seed of the particle swarm runs");
    cmd.add_option("--refine", o.refine, "candidate grid refinement of the dp oracle")->check(CLI::PositiveNumber);
    cmd.add_option("--jobs", o.jobs, "worker threads for repeated swarm runs")->check(CLI::PositiveNumber);
    cmd.add_option("--particles", o.swarm.particles, "swarm size");
    cmd.add_option("--neighbours", o.swarm.neighbours, "informers per particle");
    cmd.add_option("--max-iter", o.swarm.max_iter, "iteration limit per run");
    cmd.add_option("--stagnation", o.swarm.stagnation_reset, "topology reset after this many stagnant steps");
    cmd.add_option("--tolerance", o.swarm.energy_tolerance, "stop once the energy is at most this value");
    cmd.add_flag("!--unordered", o.swarm.ordered, "let particles leave the ordered region (energy uses a sorted copy)");
    cmd.add_option("--c1", o.swarm.c1, "cognitive weight");
    cmd.add_option("--c2", o.swarm.c2, "social weight");
    cmd.add_option("--omega", o.swarm.omega, "inertia weight");
    cmd.add_option("--out-prefix", o.out_prefix, "also write plot data files with this prefix");
}

pcsa::DiscretizedSignal load_signal(const Options& o)
{
    pcsa::SourceOptions so;
    if (o.cells > 0)
        so.cells = o.cells;
    if (o.domain.size() == 2)
        so.domain = std::pair{o.domain[0], o.domain[1]};
    so.noise_sigma = o.sigma;
    so.noise_seed = o.noise_seed;
    return pcsa::make_source(o.source, so);
}

pcsa::SolveOptions solve_options(const Options& o, std::size_t default_runs)
{
    pcsa::SolveOptions so;
    so.swarm = o.swarm;
    so.swarm.seed = o.seed;
    so.runs = o.runs > 0 ? o.runs : default_runs;
    so.jobs = o.jobs;
    so.grid.refine = o.refine;
    return so;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

int cmd_approx(const Options& o)
{
    const auto method = pcsa::parse_method(o.method);
    const auto signal = load_signal(o);
    const auto solution = pcsa::solve(signal, o.n, method, solve_options(o, 1));
    const auto approx = pcsa::build_approximation(signal, solution.boundaries);

    std::ostringstream text;
    pcsa::write_approximation(text, approx, method);
    std::cout << text.str();

    if (!o.out_prefix.empty()) {
        const auto stem = o.out_prefix + "_approx_" + std::to_string(o.n) + "_" + pcsa::method_name(method);
        std::ostringstream table;
        pcsa::write_step_table(table, approx);
        write_file(stem + ".dat", table.str());
        if (solution.stats) {
            std::ostringstream trace;
            pcsa::write_trace(trace, solution.stats->best_trace);
            write_file(stem + "_trace.dat", trace.str());
        }
    }
    return 0;
}

int cmd_sweep(const Options& o)
{
    const auto n_list = pcsa::parse_n_list(o.n_list);
    const auto signal = load_signal(o);
    const auto rows = pcsa::sweep(signal, n_list, solve_options(o, 50), o.oracle);

    std::ostringstream table, dar, pso;
    pcsa::write_sweep_table(table, rows);
    pcsa::write_db_log_table(dar, rows);
    pcsa::write_pso_log_table(pso, rows);
    std::cout << table.str() << '\n' << dar.str() << '\n' << pso.str();

    if (!o.out_prefix.empty()) {
        write_file(o.out_prefix + "_table.dat", table.str());
        write_file(o.out_prefix + "_mse_dar.dat", dar.str());
        write_file(o.out_prefix + "_mse_pso.dat", pso.str());
    }
    return 0;
}

int cmd_balance(const Options& o)
{
    const auto method = pcsa::parse_method(o.method);
    const auto signal = load_signal(o);
    const auto solution = pcsa::solve(signal, o.n, method, solve_options(o, 1));
    pcsa::write_balance(std::cout, pcsa::build_approximation(signal, solution.boundaries), method);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Piecewise-constant signal approximation: Dar-Bruckstein sampling, particle swarm and DP oracle"};
    app.require_subcommand(1);

    Options o;
    auto* approx = app.add_subcommand("approx", "approximate a signal with N segments");
    add_source_flags(*approx, o);
    add_solver_flags(*approx, o);
    approx->add_option("--n", o.n, "number of segments")->required()->check(CLI::PositiveNumber);
    approx->add_option("--method", o.method, "db | pso | dp");
    approx->add_option("--runs", o.runs, "swarm runs; the best is reported");

    auto* sweep = app.add_subcommand("sweep", "compare methods over a list of segment counts");
    add_source_flags(*sweep, o);
    add_solver_flags(*sweep, o);
    sweep->add_option("--n-list", o.n_list, "comma list or first:last:step")->required();
    sweep->add_option("--runs", o.runs, "swarm runs per N (default 50)");
    sweep->add_flag("--oracle", o.oracle, "add the dp oracle column");

    auto* balance = app.add_subcommand("balance", "report per-segment errors");
    add_source_flags(*balance, o);
    add_solver_flags(*balance, o);
    balance->add_option("--n", o.n, "number of segments")->required()->check(CLI::PositiveNumber);
    balance->add_option("--method", o.method, "db | pso | dp");
    balance->add_option("--runs", o.runs, "swarm runs; the best is reported");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*approx)
            return cmd_approx(o);
        if (*sweep)
            return cmd_sweep(o);
        return cmd_balance(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "pcsa: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "pcsa: " << e.what() << '\n';
        return 1;
    }
}
