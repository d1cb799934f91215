#include "pcsa/dp_oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcsa {

namespace {

class CandidateGrid
{
public:
    CandidateGrid(const DiscretizedSignal& signal, GridSpec grid)
    {
        if (grid.refine == 0)
            throw std::invalid_argument("grid refinement must be at least 1");
        intervals_ = signal.cells() * grid.refine;
        positions_.resize(intervals_ + 1);
        cumulative_.resize(intervals_ + 1);
        for (std::size_t k = 0; k <= intervals_; ++k) {
            positions_[k] = k == intervals_ ? signal.b()
                                            : signal.a() + signal.width() * static_cast<double>(k) /
                                                               static_cast<double>(intervals_);
            cumulative_[k] = signal.cumulative(positions_[k]);
        }
    }

    std::size_t intervals() const noexcept { return intervals_; }
    double position(std::size_t k) const noexcept { return positions_[k]; }

    double cost(std::size_t from, std::size_t to) const noexcept
    {
        const auto& l = cumulative_[from];
        const auto& r = cumulative_[to];
        return segment_error({r.f1 - l.f1, r.f2 - l.f2, positions_[to] - positions_[from]});
    }

private:
    std::size_t intervals_ = 0;
    std::vector<double> positions_;
    std::vector<Cumulative> cumulative_;
};

} // namespace

OracleResult dp_optimal(const DiscretizedSignal& signal, std::size_t segments, GridSpec grid)
{
    if (segments == 0)
        throw std::invalid_argument("dp_optimal: need at least one segment");
    const CandidateGrid cand(signal, grid);
    const auto g = cand.intervals();
    if (segments > g)
        throw std::invalid_argument("dp_optimal: " + std::to_string(segments) +
                                    " segments exceed the " + std::to_string(g) + " grid intervals");

    constexpr double inf = std::numeric_limits<double>::infinity();
    // cost[j]: best error of k segments covering grid points [0, j]
    std::vector<double> cost(g + 1, inf);
    for (std::size_t j = 1; j <= g; ++j)
        cost[j] = cand.cost(0, j);

    // from[k][j]: last boundary of the optimal (k+2)-segment cover of [0, j]
    std::vector<std::vector<std::size_t>> from(segments > 1 ? segments - 1 : 0);
    for (std::size_t k = 2; k <= segments; ++k) {
        std::vector<double> next(g + 1, inf);
        auto& arg = from[k - 2];
        arg.assign(g + 1, 0);
        // only the full cover matters for the last layer
        const std::size_t first_j = k == segments ? g : k;
        for (std::size_t j = first_j; j <= g; ++j) {
            for (std::size_t split = k - 1; split < j; ++split) {
                const double c = cost[split] + cand.cost(split, j);
                if (c < next[j]) {
                    next[j] = c;
                    arg[j] = split;
                }
            }
        }
        cost = std::move(next);
    }

    std::vector<double> xs(segments - 1);
    std::size_t j = g;
    for (std::size_t k = segments; k >= 2; --k) {
        j = from[k - 2][j];
        xs[k - 2] = cand.position(j);
    }
    return {BoundaryVector(signal.a(), signal.b(), std::move(xs)), cost[g] / signal.width()};
}

OracleResult brute_force(const DiscretizedSignal& signal, std::size_t segments, GridSpec grid)
{
    if (segments == 0)
        throw std::invalid_argument("brute_force: need at least one segment");
    const CandidateGrid cand(signal, grid);
    const auto g = cand.intervals();
    if (segments > g)
        throw std::invalid_argument("brute_force: too many segments for the grid");

    // C(g-1, segments-1) interior tuples
    const auto choose = segments - 1;
    double count = 1.0;
    for (std::size_t i = 0; i < choose; ++i)
        count = count * static_cast<double>(g - 1 - i) / static_cast<double>(i + 1);
    if (count > brute_force_limit)
        throw std::length_error("brute_force: " + std::to_string(static_cast<long long>(std::llround(count))) +
                                " boundary tuples exceed the limit of 1000000");

    std::vector<std::size_t> idx(choose);
    for (std::size_t i = 0; i < choose; ++i)
        idx[i] = i + 1;

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_idx;
    while (true) {
        double total = 0.0;
        std::size_t prev = 0;
        for (auto k : idx) {
            total += cand.cost(prev, k);
            prev = k;
        }
        total += cand.cost(prev, g);
        if (total < best) {
            best = total;
            best_idx = idx;
        }

        // next combination in lexicographic order; the last slot may reach g-1
        std::size_t i = choose;
        while (i > 0 && idx[i - 1] == g - 1 - (choose - i))
            --i;
        if (i == 0)
            break;
        ++idx[i - 1];
        for (std::size_t t = i; t < choose; ++t)
            idx[t] = idx[t - 1] + 1;
    }

    std::vector<double> xs;
    xs.reserve(choose);
    for (auto k : best_idx)
        xs.push_back(cand.position(k));
    return {BoundaryVector(signal.a(), signal.b(), std::move(xs)), best / signal.width()};
}

} // namespace pcsa
