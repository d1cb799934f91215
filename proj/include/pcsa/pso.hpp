#ifndef PCSA_PSO_HPP
#define PCSA_PSO_HPP

#include "pcsa/approximation.hpp"
#include "pcsa/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace pcsa {

/// SPSO-2011 parameters. Defaults are the standard constants with a swarm of
/// 1000 particles, 20 informers and a topology reset after 15 stagnant steps.
struct SwarmConfig
{
    std::size_t particles = 1000;
    std::size_t neighbours = 20;
    double c1 = 0.5 + std::numbers::ln2;
    double c2 = 0.5 + std::numbers::ln2;
    double omega = 1.0 / (2.0 * std::numbers::ln2);
    std::size_t max_iter = 10000;
    std::size_t stagnation_reset = 15;
    /// Stop once the global best energy is <= this value. With 0 only an
    /// exact fit ends the run early.
    double energy_tolerance = 0.0;
    std::uint64_t seed = 0;
    /// Keep every particle's coordinates sorted after each move, permuting the
    /// velocity with them. When false the swarm roams the whole box and only
    /// the energy sees a sorted copy; that variant stalls early once N grows
    /// past about 20.
    bool ordered = true;

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
};

/// 64-bit Mersenne Twister with 53-bit uniforms and polar-method normals.
/// The cached second normal deviate is part of the state.
struct SwarmRandom
{
    std::mt19937_64 engine;
    double spare = 0.0;
    bool has_spare = false;

    explicit SwarmRandom(std::uint64_t seed = 0) : engine(seed) {}

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    double gaussian() noexcept;
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine); }

    bool operator==(const SwarmRandom&) const = default;
};

struct Particle
{
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double energy = 0.0;
    double best_energy = 0.0;

    bool operator==(const Particle&) const = default;
};

struct SwarmState
{
    std::size_t dimension = 0;
    std::vector<Particle> particles;
    /// informs[s] lists the particles that s informs: s itself, then K
    /// uniformly drawn indices.
    std::vector<std::vector<std::size_t>> informs;
    std::vector<double> global_best_position;
    double global_best_energy = 0.0;
    std::size_t iteration = 0;
    std::size_t stagnation = 0;
    SwarmRandom random;

    bool operator==(const SwarmState&) const = default;
};

/// Uniform point in the closed Euclidean ball around `centre`.
void sample_in_ball(std::span<const double> centre, double radius, SwarmRandom& random, std::span<double> out);

/// Positions and velocities uniform in the box [a, b]^(N-1); energies are
/// evaluated on sorted copies. Throws std::invalid_argument if segments < 2.
SwarmState init_swarm(const DiscretizedSignal& signal, std::size_t segments, const SwarmConfig& config);

/// One synchronous SPSO-2011 iteration: all particles move using the
/// personal bests of the previous iteration, then bests are updated in
/// particle order.
void step(SwarmState& state, const DiscretizedSignal& signal, const SwarmConfig& config);

struct PsoResult
{
    BoundaryVector boundaries;
    double energy = 0.0;
    std::size_t iterations = 0;
    /// Global best energy after initialisation and after every step.
    std::vector<double> trace;
};

PsoResult run(const DiscretizedSignal& signal, std::size_t segments, const SwarmConfig& config);

struct RunStats
{
    std::vector<double> energies;
    std::vector<std::uint64_t> seeds;
    double mu = 0.0;
    /// Population standard deviation.
    double sigma = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t best_run = 0;
    BoundaryVector best_boundaries{0.0, 1.0};
    std::vector<double> best_trace;
};

/// Seed of run `index` derived from a base seed (splitmix64 finaliser).
std::uint64_t run_seed(std::uint64_t base, std::size_t index) noexcept;

/// Independent runs with derived seeds. Runs execute on up to `jobs`
/// threads; the result does not depend on `jobs`.
RunStats multi_run(const DiscretizedSignal& signal, std::size_t segments, const SwarmConfig& config,
                   std::size_t runs = 50, std::size_t jobs = 1);

} // namespace pcsa

#endif // PCSA_PSO_HPP
