#ifndef PCSA_APPROXIMATION_HPP
#define PCSA_APPROXIMATION_HPP

#include "pcsa/signal.hpp"

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace pcsa {

/**
 * Interior segment boundaries x_1..x_{N-1} of an N-segment partition of
 * [a, b]. Canonical vectors are strictly increasing; ties and
 * endpoint-touching values are allowed and produce zero-width segments.
 */
class BoundaryVector
{
public:
    BoundaryVector(double a, double b, std::vector<double> boundaries = {});

    /// a + i*(b-a)/N for i = 1..N-1.
    static BoundaryVector uniform(double a, double b, std::size_t segments);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    std::size_t segments() const noexcept { return boundaries_.size() + 1; }
    std::span<const double> boundaries() const noexcept { return boundaries_; }

    bool is_sorted() const noexcept;
    BoundaryVector sorted() const;

    /// x_0 = a, x_1..x_{N-1}, x_N = b.
    std::vector<double> knots() const;

private:
    double a_;
    double b_;
    std::vector<double> boundaries_;
};

struct PiecewiseApprox
{
    BoundaryVector boundaries;
    std::vector<double> segment_values;
    std::vector<double> segment_errors;
    double mse = 0.0;
};

struct ErrorBalance
{
    double min_error = 0.0;
    double max_error = 0.0;
    /// max/min; +infinity when min_error is zero.
    double ratio = std::numeric_limits<double>::infinity();
};

/// Squared L2 error of a segment approximated by its mean.
/// Zero for zero-width segments; never negative.
inline double segment_error(const IntervalIntegrals& in) noexcept
{
    if (!(in.length > 0.0))
        return 0.0;
    const double mean = in.i1 / in.length;
    const double e = in.i2 - 2.0 * mean * in.i1 + mean * mean * in.length;
    return e > 0.0 ? e : 0.0;
}

/// Mean-value approximation u of f on the (sorted) partition x.
/// Throws std::invalid_argument if x and the signal disagree on [a, b] or a
/// boundary lies outside it.
PiecewiseApprox build_approximation(const DiscretizedSignal& signal, const BoundaryVector& x);

/// E(x) = (1/(b-a)) * sum_i e_i, evaluated on the sorted copy of x.
double energy(const DiscretizedSignal& signal, const BoundaryVector& x);

/// Unchecked E(x) for boundaries already sorted and inside [a, b].
double energy_sorted(const DiscretizedSignal& signal, std::span<const double> sorted_boundaries) noexcept;

/// Extremes of e_i over positive-width segments.
ErrorBalance segment_error_report(const PiecewiseApprox& approx);

/// Segment error under local linearity: h^3 * slope^2 / 12.
double linearized_error(double h, double slope);

/// (1 - 3 eta + 3 eta^2) / 3, the exact-error factor for eta in [0, 1].
double exact_error_factor(double eta);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

/// Plot table with header `x fx`: each segment's start and value, then (b, u_{N-1}).
void write_step_table(std::ostream& out, const PiecewiseApprox& approx);

} // namespace pcsa

#endif // PCSA_APPROXIMATION_HPP
