#ifndef PCSA_SIGNAL_HPP
#define PCSA_SIGNAL_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcsa {

/// Integrals of f and f^2 over [xl, xr], together with the interval length.
struct IntervalIntegrals
{
    double i1 = 0.0;
    double i2 = 0.0;
    double length = 0.0;
};

/// Running integrals F1(x) = int_a^x f and F2(x) = int_a^x f^2.
struct Cumulative
{
    double f1 = 0.0;
    double f2 = 0.0;
};

/**
 * A signal on [a, b] stored as M uniform cells of constant value.
 *
 * Cell j covers [a + j*delta, a + (j+1)*delta). Prefix sums of f and f^2
 * make every interval integral O(1); partial end cells contribute in
 * proportion to their overlap, so integrals are exact for the surrogate
 * and continuous in the interval endpoints.
 *
 * Immutable after construction.
 */
class DiscretizedSignal
{
public:
    /// Throws std::invalid_argument if values is empty or b <= a.
    DiscretizedSignal(std::vector<double> values, double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double width() const noexcept { return b_ - a_; }
    std::size_t cells() const noexcept { return values_.size(); }
    double cell_width() const noexcept { return delta_; }
    double cell_edge(std::size_t k) const noexcept;

    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> prefix1() const noexcept { return prefix1_; }
    std::span<const double> prefix2() const noexcept { return prefix2_; }

    /// Index of the cell containing x, clamped to [0, M-1].
    std::size_t cell_index(double x) const noexcept;

    /// F1(x), F2(x). x is clamped to [a, b]; no validation (hot path).
    Cumulative cumulative(double x) const noexcept;

    /// Checked interval integrals; requires a <= xl <= xr <= b.
    IntervalIntegrals interval_integrals(double xl, double xr) const;

private:
    // prefix sums and cell value side by side, one cache line per lookup
    struct CellRecord
    {
        double f1;
        double f2;
        double value;
        double value2;
    };

    double a_;
    double b_;
    double delta_;
    double inv_delta_;
    std::vector<CellRecord> table_;
    std::vector<double> values_;
    std::vector<double> prefix1_;
    std::vector<double> prefix2_;
};

struct NoiseSpec
{
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Chirp 255*cos(2*pi*x*(1+5x)) on [0,1], sampled at the midpoints of M cells.
DiscretizedSignal make_chirp(std::size_t cells);

/// Linear ramp f(x) = slope*x on [a, b], midpoint sampled.
DiscretizedSignal make_ramp(std::size_t cells, double slope = 1.0, double a = 0.0, double b = 1.0);

/// Cells of unit width on [0, M] holding `segments` random integer levels in
/// [16, 240]; jump positions and levels are drawn from `seed`.
DiscretizedSignal make_step_signal(std::size_t cells, std::size_t segments, std::uint64_t seed);

DiscretizedSignal from_values(std::vector<double> values, double a, double b);

/// Returns a new signal with i.i.d. N(0, sigma^2) added to every cell.
DiscretizedSignal add_gaussian_noise(const DiscretizedSignal& signal, const NoiseSpec& spec);

class PgmError : public std::runtime_error
{
public:
    enum class Kind
    {
        io,
        parse,
        unsupported_maxval,
        row_out_of_range,
    };

    PgmError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// One row of a P2 or P5 image as a signal on [0, width] with unit cells.
DiscretizedSignal load_pgm_row(const std::filesystem::path& path, std::size_t row);

/// One real per line; a leading non-numeric header line and blank lines are
/// skipped. Throws std::runtime_error on I/O or parse failure.
std::vector<double> load_csv_values(const std::filesystem::path& path);

} // namespace pcsa

#endif // PCSA_SIGNAL_HPP
