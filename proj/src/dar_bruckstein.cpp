#include "pcsa/dar_bruckstein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcsa {

DerivativeDensity::DerivativeDensity(double a, double b, std::vector<double> cum)
    : a_(a), b_(b), cum_(std::move(cum))
{
    if (cum_.size() < 2)
        throw std::invalid_argument("DerivativeDensity: need at least one cell");
    if (!(b > a))
        throw std::invalid_argument("DerivativeDensity: domain requires b > a");
    delta_ = (b_ - a_) / static_cast<double>(cum_.size() - 1);
}

double DerivativeDensity::mass_until(double x) const noexcept
{
    const auto m = cum_.size() - 1;
    const double t = (x - a_) / delta_;
    if (!(t > 0.0))
        return 0.0;
    if (t >= static_cast<double>(m))
        return cum_[m];
    const auto k = static_cast<std::size_t>(t);
    const double frac = t - static_cast<double>(k);
    return cum_[k] + frac * (cum_[k + 1] - cum_[k]);
}

DerivativeDensity derivative_density(const DiscretizedSignal& signal)
{
    const auto m = signal.cells();
    if (m < 2)
        throw std::invalid_argument("derivative_density: need at least two cells");
    const auto values = signal.values();
    const double delta = signal.cell_width();

    // edge_density[e] = |f'|^(2/3) at the edge between cell e and e+1
    std::vector<double> edge_density(m - 1);
    for (std::size_t e = 0; e + 1 < m; ++e) {
        const double slope = (values[e + 1] - values[e]) / delta;
        edge_density[e] = std::cbrt(slope * slope);
    }

    std::vector<double> cum(m + 1);
    cum[0] = 0.0;
    long double running = 0.0L;
    for (std::size_t j = 0; j < m; ++j) {
        const double left = j > 0 ? edge_density[j - 1] : edge_density[0];
        const double right = j + 1 < m ? edge_density[j] : edge_density[m - 2];
        running += 0.5L * (static_cast<long double>(left) + right) * delta;
        cum[j + 1] = static_cast<double>(running);
    }
    return DerivativeDensity(signal.a(), signal.b(), std::move(cum));
}

BoundaryVector db_boundaries(const DerivativeDensity& density, std::size_t segments)
{
    if (segments == 0)
        throw std::invalid_argument("db_boundaries: need at least one segment");
    const double total = density.total();
    if (!(total > 0.0))
        return BoundaryVector::uniform(density.a(), density.b(), segments);

    const auto cum = density.cum();
    const auto m = cum.size() - 1;
    const double delta = (density.b() - density.a()) / static_cast<double>(m);
    const double quota = total / static_cast<double>(segments);

    std::vector<double> xs;
    xs.reserve(segments - 1);
    for (std::size_t i = 1; i < segments; ++i) {
        const double level = static_cast<double>(i) * quota;
        // first edge reaching the level; the crossing lies in the cell before it
        const auto it = std::lower_bound(cum.begin(), cum.end(), level);
        const auto k = static_cast<std::size_t>(it - cum.begin());
        double x;
        if (k == 0) {
            x = density.a();
        } else if (k > m) {
            x = density.b();
        } else {
            const double lo = cum[k - 1];
            const double hi = cum[k];
            const double frac = (level - lo) / (hi - lo);
            x = density.a() + (static_cast<double>(k - 1) + frac) * delta;
        }
        xs.push_back(std::clamp(x, density.a(), density.b()));
    }
    // crossings of increasing levels are nondecreasing; enforce it against round-off
    for (std::size_t i = 1; i < xs.size(); ++i)
        xs[i] = std::max(xs[i], xs[i - 1]);
    return BoundaryVector(density.a(), density.b(), std::move(xs));
}

} // namespace pcsa
