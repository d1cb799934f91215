#include "pcsa/pso.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace pcsa {

void SwarmConfig::validate() const
{
    if (particles == 0)
        throw std::invalid_argument("swarm needs at least one particle");
    if (neighbours == 0 || neighbours > particles)
        throw std::invalid_argument("neighbourhood size must lie in [1, particles]");
    if (!(c1 >= 0.0 && c2 >= 0.0 && omega >= 0.0))
        throw std::invalid_argument("c1, c2 and omega must be nonnegative");
    if (stagnation_reset == 0)
        throw std::invalid_argument("stagnation reset must be at least 1");
    if (!(energy_tolerance >= 0.0))
        throw std::invalid_argument("energy tolerance must be nonnegative");
}

double SwarmRandom::gaussian() noexcept
{
    if (has_spare) {
        has_spare = false;
        return spare;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare = v * scale;
    has_spare = true;
    return u * scale;
}

void sample_in_ball(std::span<const double> centre, double radius, SwarmRandom& random, std::span<double> out)
{
    const auto d = centre.size();
    if (!(radius > 0.0) || d == 0) {
        std::copy(centre.begin(), centre.end(), out.begin());
        return;
    }
    if (d == 1) {
        out[0] = centre[0] + radius * random.uniform(-1.0, 1.0);
        return;
    }

    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            out[k] = random.gaussian();
            norm2 += out[k] * out[k];
        }
    } while (!(norm2 > 0.0));

    const double r = radius * std::pow(random.uniform(), 1.0 / static_cast<double>(d));
    const double scale = r / std::sqrt(norm2);
    for (std::size_t k = 0; k < d; ++k)
        out[k] = centre[k] + scale * out[k];
}

namespace {

void randomise_topology(SwarmState& state, std::size_t neighbours)
{
    const auto n = state.particles.size();
    state.informs.assign(n, {});
    for (std::size_t s = 0; s < n; ++s) {
        auto& row = state.informs[s];
        row.reserve(neighbours + 1);
        row.push_back(s);
        for (std::size_t k = 0; k < neighbours; ++k)
            row.push_back(state.random.index(n));
    }
}

class EnergyEvaluator
{
public:
    EnergyEvaluator(const DiscretizedSignal& signal, std::size_t dimension)
        : signal_(signal), scratch_(dimension)
    {}

    double operator()(std::span<const double> position)
    {
        if (std::is_sorted(position.begin(), position.end()))
            return energy_sorted(signal_, position);
        std::copy(position.begin(), position.end(), scratch_.begin());
        std::sort(scratch_.begin(), scratch_.end());
        return energy_sorted(signal_, scratch_);
    }

private:
    const DiscretizedSignal& signal_;
    std::vector<double> scratch_;
};

// best personal best among each particle's informers; ties keep the particle itself
std::vector<std::size_t> local_bests(const SwarmState& state)
{
    const auto n = state.particles.size();
    std::vector<std::size_t> best(n);
    std::iota(best.begin(), best.end(), std::size_t{0});
    for (std::size_t s = 0; s < n; ++s) {
        const double e = state.particles[s].best_energy;
        for (auto j : state.informs[s]) {
            if (e < state.particles[best[j]].best_energy)
                best[j] = s;
        }
    }
    return best;
}

// sorts the coordinates and carries each velocity component along with its coordinate
void sort_with_velocity(Particle& p, std::vector<std::pair<double, double>>& scratch)
{
    if (std::is_sorted(p.position.begin(), p.position.end()))
        return;
    const auto d = p.position.size();
    scratch.resize(d);
    for (std::size_t k = 0; k < d; ++k)
        scratch[k] = {p.position[k], p.velocity[k]};
    std::stable_sort(scratch.begin(), scratch.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    for (std::size_t k = 0; k < d; ++k) {
        p.position[k] = scratch[k].first;
        p.velocity[k] = scratch[k].second;
    }
}

} // namespace

SwarmState init_swarm(const DiscretizedSignal& signal, std::size_t segments, const SwarmConfig& config)
{
    if (segments < 2)
        throw std::invalid_argument("init_swarm: a swarm needs at least two segments");
    config.validate();

    const double a = signal.a();
    const double b = signal.b();
    SwarmState state;
    state.dimension = segments - 1;
    state.random = SwarmRandom(config.seed);
    state.particles.resize(config.particles);

    EnergyEvaluator evaluate(signal, state.dimension);
    std::vector<std::pair<double, double>> scratch;
    for (auto& p : state.particles) {
        p.position.resize(state.dimension);
        p.velocity.resize(state.dimension);
        for (std::size_t k = 0; k < state.dimension; ++k) {
            p.position[k] = state.random.uniform(a, b);
            p.velocity[k] = 0.5 * (state.random.uniform(a, b) - p.position[k]);
        }
        if (config.ordered)
            sort_with_velocity(p, scratch);
        p.energy = evaluate(p.position);
        p.best_position = p.position;
        p.best_energy = p.energy;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < state.particles.size(); ++i) {
        if (state.particles[i].best_energy < state.particles[best].best_energy)
            best = i;
    }
    state.global_best_position = state.particles[best].best_position;
    state.global_best_energy = state.particles[best].best_energy;
    randomise_topology(state, config.neighbours);
    return state;
}

void step(SwarmState& state, const DiscretizedSignal& signal, const SwarmConfig& config)
{
    const auto d = state.dimension;
    const auto n = state.particles.size();
    const double a = signal.a();
    const double b = signal.b();
    const auto informer_best = local_bests(state);

    std::vector<double> g(d);
    std::vector<double> h(d);
    std::vector<std::pair<double, double>> scratch;

    for (std::size_t i = 0; i < n; ++i) {
        auto& p = state.particles[i];
        const auto& own_best = p.best_position;
        const bool own_is_local = informer_best[i] == i;
        const auto& local_best = state.particles[informer_best[i]].best_position;

        double radius2 = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double x = p.position[k];
            const double towards_own = x + config.c1 * state.random.uniform() * (own_best[k] - x);
            if (own_is_local) {
                g[k] = 0.5 * (x + towards_own);
            } else {
                const double towards_local = x + config.c2 * state.random.uniform() * (local_best[k] - x);
                g[k] = (x + towards_own + towards_local) / 3.0;
            }
            radius2 += (g[k] - x) * (g[k] - x);
        }

        sample_in_ball(g, std::sqrt(radius2), state.random, h);

        for (std::size_t k = 0; k < d; ++k) {
            double v = config.omega * p.velocity[k] + h[k] - p.position[k];
            double x = p.position[k] + v;
            if (x < a) {
                x = a;
                v = -0.5 * v;
            } else if (x > b) {
                x = b;
                v = -0.5 * v;
            }
            p.position[k] = x;
            p.velocity[k] = v;
        }
        if (config.ordered)
            sort_with_velocity(p, scratch);
    }

    EnergyEvaluator evaluate(signal, d);
    for (auto& p : state.particles)
        p.energy = evaluate(p.position);

    const double previous_best = state.global_best_energy;
    for (auto& p : state.particles) {
        if (p.energy < p.best_energy) {
            p.best_energy = p.energy;
            p.best_position = p.position;
        }
        if (p.best_energy < state.global_best_energy) {
            state.global_best_energy = p.best_energy;
            state.global_best_position = p.best_position;
        }
    }

    ++state.iteration;
    if (state.global_best_energy < previous_best) {
        state.stagnation = 0;
    } else if (++state.stagnation >= config.stagnation_reset) {
        randomise_topology(state, config.neighbours);
        state.stagnation = 0;
    }
}

namespace {

BoundaryVector canonical(const DiscretizedSignal& signal, std::vector<double> xs)
{
    for (auto& x : xs)
        x = std::clamp(x, signal.a(), signal.b());
    std::sort(xs.begin(), xs.end());
    return BoundaryVector(signal.a(), signal.b(), std::move(xs));
}

} // namespace

PsoResult run(const DiscretizedSignal& signal, std::size_t segments, const SwarmConfig& config)
{
    if (segments == 0)
        throw std::invalid_argument("run: need at least one segment");
    if (segments == 1) {
        const double e = energy_sorted(signal, {});
        return {BoundaryVector(signal.a(), signal.b()), e, 0, {e}};
    }

    auto state = init_swarm(signal, segments, config);
    PsoResult out{BoundaryVector(signal.a(), signal.b()), 0.0, 0, {}};
    out.trace.reserve(config.max_iter + 1);
    out.trace.push_back(state.global_best_energy);
    while (state.iteration < config.max_iter && state.global_best_energy > config.energy_tolerance) {
        step(state, signal, config);
        out.trace.push_back(state.global_best_energy);
    }
    out.iterations = state.iteration;
    out.boundaries = canonical(signal, state.global_best_position);
    out.energy = energy_sorted(signal, out.boundaries.boundaries());
    return out;
}

std::uint64_t run_seed(std::uint64_t base, std::size_t index) noexcept
{
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RunStats multi_run(const DiscretizedSignal& signal, std::size_t segments, const SwarmConfig& config,
                   std::size_t runs, std::size_t jobs)
{
    if (runs == 0)
        throw std::invalid_argument("multi_run: need at least one run");
    config.validate();

    std::vector<PsoResult> results(runs, PsoResult{BoundaryVector(signal.a(), signal.b()), 0.0, 0, {}});
    std::vector<std::uint64_t> seeds(runs);
    for (std::size_t r = 0; r < runs; ++r)
        seeds[r] = run_seed(config.seed, r);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto r = next++; r < runs; r = next++) {
            auto cfg = config;
            cfg.seed = seeds[r];
            results[r] = run(signal, segments, cfg);
        }
    };
    const auto threads = std::clamp<std::size_t>(jobs, 1, runs);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    RunStats stats;
    stats.seeds = std::move(seeds);
    stats.energies.reserve(runs);
    for (const auto& r : results)
        stats.energies.push_back(r.energy);

    const auto& e = stats.energies;
    const auto best = static_cast<std::size_t>(std::min_element(e.begin(), e.end()) - e.begin());
    stats.best_run = best;
    stats.min = e[best];
    stats.max = *std::max_element(e.begin(), e.end());
    const double n = static_cast<double>(runs);
    stats.mu = std::accumulate(e.begin(), e.end(), 0.0) / n;
    double var = 0.0;
    for (double v : e)
        var += (v - stats.mu) * (v - stats.mu);
    stats.sigma = std::sqrt(var / n);
    // mean of identical values can round just outside [min, max]
    stats.mu = std::clamp(stats.mu, stats.min, stats.max);
    stats.best_boundaries = results[best].boundaries;
    stats.best_trace = std::move(results[best].trace);
    return stats;
}

} // namespace pcsa
