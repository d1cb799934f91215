#ifndef PCSA_DAR_BRUCKSTEIN_HPP
#define PCSA_DAR_BRUCKSTEIN_HPP

#include "pcsa/approximation.hpp"
#include "pcsa/signal.hpp"

#include <span>
#include <vector>

namespace pcsa {

/**
 * Cumulative cube-root density C(x) = int_a^x |f'|^(2/3) sampled at the M+1
 * cell edges. C is linear inside each cell.
 *
 * f' is the forward difference between adjacent cells, located at their
 * shared edge. Half of each edge's mass goes to each neighbouring cell; the
 * outer halves of the first and last cell reuse the nearest difference.
 */
class DerivativeDensity
{
public:
    DerivativeDensity(double a, double b, std::vector<double> cum);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    std::span<const double> cum() const noexcept { return cum_; }
    double total() const noexcept { return cum_.back(); }

    /// C(x), interpolated linearly inside a cell.
    double mass_until(double x) const noexcept;

private:
    double a_;
    double b_;
    double delta_;
    std::vector<double> cum_;
};

/// Throws std::invalid_argument for signals with fewer than two cells.
DerivativeDensity derivative_density(const DiscretizedSignal& signal);

/// Boundaries x_i with C(x_i) = i * total / N; uniform split if total is 0.
BoundaryVector db_boundaries(const DerivativeDensity& density, std::size_t segments);

} // namespace pcsa

#endif // PCSA_DAR_BRUCKSTEIN_HPP
