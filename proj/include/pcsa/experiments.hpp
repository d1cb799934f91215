#ifndef PCSA_EXPERIMENTS_HPP
#define PCSA_EXPERIMENTS_HPP

#include "pcsa/approximation.hpp"
#include "pcsa/dp_oracle.hpp"
#include "pcsa/pso.hpp"
#include "pcsa/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcsa {

/// Bad command-line input (unknown source or method, malformed lists).
class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

enum class Method
{
    db,
    pso,
    dp,
};

Method parse_method(const std::string& name);
const char* method_name(Method method) noexcept;

struct SourceOptions
{
    /// Cell count for generated signals; each source has its own default.
    std::optional<std::size_t> cells;
    /// Domain for csv sources; [0, count] when absent.
    std::optional<std::pair<double, double>> domain;
    double noise_sigma = 0.0;
    std::uint64_t noise_seed = 1;
};

/**
 * Builds a signal from a source descriptor:
 *   chirp                 255 cos(2 pi x (1+5x)) on [0,1], 100000 cells
 *   ramp                  f(x) = x on [0,1], 1000 cells
 *   steps:<count>:<seed>  random step signal, 256 unit cells
 *   csv:<path>            one value per line
 *   pgm:<path>:<row>      one image row, unit cells
 * Gaussian noise is added when noise_sigma > 0.
 */
DiscretizedSignal make_source(const std::string& source, const SourceOptions& options = {});

/// Parses "5,10,20" or "5:100:5" (first:last:step).
std::vector<std::size_t> parse_n_list(const std::string& text);

struct SolveOptions
{
    SwarmConfig swarm;
    std::size_t runs = 1;
    std::size_t jobs = 1;
    GridSpec grid{4};
};

struct Solution
{
    BoundaryVector boundaries;
    double energy = 0.0;
    std::optional<RunStats> stats;
};

Solution solve(const DiscretizedSignal& signal, std::size_t segments, Method method, const SolveOptions& options);

struct ExperimentRow
{
    std::size_t segments = 0;
    double db_mse = 0.0;
    double mu = 0.0;
    double sigma = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::optional<double> dp_mse;
};

std::vector<ExperimentRow> sweep(const DiscretizedSignal& signal, const std::vector<std::size_t>& n_list,
                                 const SolveOptions& options, bool with_oracle);

/// `N db_mse mu sigma min max [dp_mse]`
void write_sweep_table(std::ostream& out, const std::vector<ExperimentRow>& rows);
/// `N log10E` from the DB column.
void write_db_log_table(std::ostream& out, const std::vector<ExperimentRow>& rows);
/// `N log10Min` from the PSO min column.
void write_pso_log_table(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// Writes `# mse`, `# boundaries` comment lines followed by the step table.
void write_approximation(std::ostream& out, const PiecewiseApprox& approx, Method method);

/// Per-segment errors and the max/min balance ratio.
void write_balance(std::ostream& out, const PiecewiseApprox& approx, Method method);

/// `iter energy`
void write_trace(std::ostream& out, const std::vector<double>& trace);

} // namespace pcsa

#endif // PCSA_EXPERIMENTS_HPP
