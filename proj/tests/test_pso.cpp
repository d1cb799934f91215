#include <catch_amalgamated.hpp>

#include "pcsa/dp_oracle.hpp"
#include "pcsa/pso.hpp"

#include <cmath>
#include <numeric>
#include <random>

using Catch::Approx;

namespace {

pcsa::DiscretizedSignal four_cells() { return pcsa::from_values({8.0, 5.5, 2.0, 3.0}, 0.0, 4.0); }

pcsa::SwarmConfig small_config(std::uint64_t seed)
{
    pcsa::SwarmConfig c;
    c.particles = 100;
    c.neighbours = 10;
    c.max_iter = 300;
    c.seed = seed;
    return c;
}

} // namespace

TEST_CASE("default configuration", "[pso]")
{
    const pcsa::SwarmConfig c;
    CHECK(c.particles == 1000);
    CHECK(c.neighbours == 20);
    CHECK(c.max_iter == 10000);
    CHECK(c.stagnation_reset == 15);
    CHECK(c.c1 == Approx(0.5 + std::log(2.0)));
    CHECK(c.c2 == Approx(0.5 + std::log(2.0)));
    CHECK(c.omega == Approx(1.0 / (2.0 * std::log(2.0))));
    CHECK_NOTHROW(c.validate());

    auto bad = c;
    bad.neighbours = 1001;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.particles = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.omega = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("random source", "[pso][random]")
{
    pcsa::SwarmRandom r(1);
    double lo = 1.0, hi = 0.0, sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        const double g = r.gaussian();
        sum += g;
        sq += g * g;
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(std::abs(sum / n) < 4.0 / std::sqrt(n));
    CHECK(sq / n == Approx(1.0).epsilon(0.02));
}

TEST_CASE("hypersphere sampling is uniform in the ball", "[pso][ball]")
{
    for (std::size_t d : {1u, 2u, 5u, 19u}) {
        pcsa::SwarmRandom random(d);
        std::vector<double> centre(d);
        for (std::size_t k = 0; k < d; ++k)
            centre[k] = 0.3 * static_cast<double>(k) - 1.0;
        const double radius = 2.5;
        const int samples = 100000;
        std::vector<double> out(d), mean(d, 0.0);
        double inner = 0.0;
        for (int s = 0; s < samples; ++s) {
            pcsa::sample_in_ball(centre, radius, random, out);
            double r2 = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                r2 += (out[k] - centre[k]) * (out[k] - centre[k]);
                mean[k] += out[k];
            }
            REQUIRE(std::sqrt(r2) <= radius * (1.0 + 1e-12));
            // half the volume lies within radius * 2^(-1/d)
            inner += std::sqrt(r2) <= radius * std::pow(0.5, 1.0 / static_cast<double>(d));
        }
        // per-coordinate variance of a uniform ball is r^2 / (d + 2)
        const double se = radius / std::sqrt(static_cast<double>(d + 2)) / std::sqrt(samples);
        for (std::size_t k = 0; k < d; ++k)
            CHECK(std::abs(mean[k] / samples - centre[k]) < 3.0 * se);
        CHECK(inner / samples == Approx(0.5).margin(0.01));
    }

    pcsa::SwarmRandom random(0);
    std::vector<double> c{1.0, 2.0}, out(2);
    pcsa::sample_in_ball(c, 0.0, random, out);
    CHECK(out == c);
}

TEST_CASE("swarm initialisation", "[pso]")
{
    const auto f = four_cells();
    auto config = small_config(3);
    config.particles = 50;
    const auto state = pcsa::init_swarm(f, 4, config);
    CHECK(state.dimension == 3);
    REQUIRE(state.particles.size() == 50);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : state.particles) {
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(p.position[k] >= 0.0);
            CHECK(p.position[k] <= 4.0);
        }
        auto sorted = p.position;
        std::sort(sorted.begin(), sorted.end());
        CHECK(p.energy == pcsa::energy(f, pcsa::BoundaryVector(0.0, 4.0, sorted)));
        best = std::min(best, p.best_energy);
    }
    CHECK(state.global_best_energy == best);
    REQUIRE(state.informs.size() == 50);
    for (std::size_t s = 0; s < 50; ++s) {
        REQUIRE(state.informs[s].size() == config.neighbours + 1);
        CHECK(state.informs[s][0] == s);
    }

    CHECK(pcsa::init_swarm(f, 4, config) == state);
    CHECK_THROWS_AS(pcsa::init_swarm(f, 1, config), std::invalid_argument);
}

TEST_CASE("single particle swarm", "[pso]")
{
    const auto f = four_cells();
    pcsa::SwarmConfig config;
    config.particles = 1;
    config.neighbours = 1;
    const auto state = pcsa::init_swarm(f, 3, config);
    CHECK(state.global_best_position == state.particles[0].position);
    CHECK(state.global_best_energy == state.particles[0].energy);
}

TEST_CASE("zero weights make a particle at its own best stand still", "[pso]")
{
    const auto f = four_cells();
    pcsa::SwarmConfig config;
    config.particles = 1;
    config.neighbours = 1;
    config.omega = 0.0;
    config.c1 = 0.0;
    config.c2 = 0.0;
    auto state = pcsa::init_swarm(f, 3, config);
    const auto x0 = state.particles[0].position;
    for (int i = 0; i < 5; ++i) {
        pcsa::step(state, f, config);
        CHECK(state.particles[0].position == x0);
        CHECK(state.particles[0].velocity == std::vector<double>(2, 0.0));
    }
}

TEST_CASE("best tracking invariants", "[pso][property]")
{
    const auto s = pcsa::make_step_signal(64, 9, 4);
    auto config = small_config(8);
    auto state = pcsa::init_swarm(s, 6, config);
    std::vector<double> personal(state.particles.size());
    for (std::size_t i = 0; i < personal.size(); ++i)
        personal[i] = state.particles[i].best_energy;
    double global = state.global_best_energy;
    for (int it = 0; it < 100; ++it) {
        pcsa::step(state, s, config);
        CHECK(state.global_best_energy <= global);
        global = state.global_best_energy;
        double min_personal = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < personal.size(); ++i) {
            const auto& p = state.particles[i];
            CHECK(p.best_energy <= p.energy);
            CHECK(p.best_energy <= personal[i]);
            personal[i] = p.best_energy;
            min_personal = std::min(min_personal, p.best_energy);
            for (double x : p.position)
                CHECK((x >= s.a() && x <= s.b()));
        }
        CHECK(state.global_best_energy == min_personal);
    }
    CHECK(state.iteration == 100);
}

TEST_CASE("four-cell example converges to the global optimum", "[pso]")
{
    auto config = pcsa::SwarmConfig{};
    config.max_iter = 200;
    config.seed = 1;
    const auto result = pcsa::run(four_cells(), 2, config);
    REQUIRE(result.boundaries.boundaries().size() == 1);
    CHECK(result.boundaries.boundaries()[0] == Approx(2.0).margin(1e-3));
    CHECK(result.energy == Approx(0.90625).margin(1e-6));
    CHECK(result.iterations == 200);
    CHECK(result.trace.size() == 201);
    CHECK(std::is_sorted(result.trace.rbegin(), result.trace.rend()));
}

TEST_CASE("trivial runs", "[pso]")
{
    const auto one = pcsa::run(four_cells(), 1, small_config(0));
    CHECK(one.boundaries.boundaries().empty());
    CHECK(one.energy == Approx(pcsa::energy(four_cells(), pcsa::BoundaryVector(0.0, 4.0))));
    CHECK(one.iterations == 0);

    const auto c = pcsa::from_values(std::vector<double>(20, 9.0), 0.0, 1.0);
    const auto flat = pcsa::run(c, 4, small_config(0));
    CHECK(flat.energy == 0.0);
    CHECK(flat.iterations == 0);
}

TEST_CASE("returned boundaries are feasible", "[pso][property]")
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = pcsa::make_step_signal(40, 1 + rng() % 10, rng());
        auto config = small_config(rng());
        config.max_iter = 50;
        const auto n = 2 + rng() % 6;
        const auto r = pcsa::run(s, n, config);
        const auto xs = r.boundaries.boundaries();
        CHECK(xs.size() == n - 1);
        CHECK(std::is_sorted(xs.begin(), xs.end()));
        for (double x : xs)
            CHECK((x >= s.a() && x <= s.b()));
        CHECK(r.energy == pcsa::energy(s, r.boundaries));
    }
}

TEST_CASE("multi-run statistics", "[pso]")
{
    const auto s = pcsa::make_step_signal(50, 8, 2);
    auto config = small_config(42);
    config.max_iter = 60;

    const auto single = pcsa::multi_run(s, 5, config, 1);
    CHECK(single.mu == single.min);
    CHECK(single.max == single.min);
    CHECK(single.sigma == 0.0);

    const auto stats = pcsa::multi_run(s, 5, config, 7, 1);
    REQUIRE(stats.energies.size() == 7);
    const double mu = std::accumulate(stats.energies.begin(), stats.energies.end(), 0.0) / 7.0;
    double var = 0.0;
    for (double e : stats.energies)
        var += (e - mu) * (e - mu);
    CHECK(stats.mu == Approx(mu));
    CHECK(stats.sigma == Approx(std::sqrt(var / 7.0)).margin(1e-12));
    CHECK(stats.min == *std::min_element(stats.energies.begin(), stats.energies.end()));
    CHECK(stats.max == *std::max_element(stats.energies.begin(), stats.energies.end()));
    CHECK(stats.min <= stats.mu);
    CHECK(stats.mu <= stats.max);
    CHECK(pcsa::energy(s, stats.best_boundaries) == stats.min);

    // seeds are distinct and independent of thread count
    std::vector<std::uint64_t> seeds = stats.seeds;
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
    const auto threaded = pcsa::multi_run(s, 5, config, 7, 3);
    CHECK(threaded.energies == stats.energies);
    CHECK(threaded.seeds == stats.seeds);

    CHECK_THROWS_AS(pcsa::multi_run(s, 5, config, 0), std::invalid_argument);
}

TEST_CASE("small instances reach the exact optimum", "[pso][oracle][property]")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> value(0.0, 255.0);
    int hits = 0;
    const int trials = 40;
    for (int trial = 0; trial < trials; ++trial) {
        const auto m = 2 + rng() % 11;
        std::vector<double> v(m);
        for (auto& x : v)
            x = value(rng);
        const auto s = pcsa::from_values(v, 0.0, static_cast<double>(m));
        const auto n = std::min<std::size_t>(2 + rng() % 3, m);
        const double exact = pcsa::brute_force(s, n, {1}).energy;
        auto config = small_config(rng());
        config.particles = 200;
        config.max_iter = 500;
        const auto r = pcsa::run(s, n, config);
        CHECK(r.energy >= exact - 1e-9);
        hits += r.energy <= exact + 1e-6;
    }
    CHECK(hits >= 0.95 * trials);
}

TEST_CASE("ordered swarms keep sorted coordinates", "[pso]")
{
    const auto s = pcsa::make_step_signal(64, 9, 4);
    auto config = small_config(5);
    auto state = pcsa::init_swarm(s, 8, config);
    for (int it = 0; it < 30; ++it) {
        for (const auto& p : state.particles) {
            CHECK(std::is_sorted(p.position.begin(), p.position.end()));
            CHECK(std::is_sorted(p.best_position.begin(), p.best_position.end()));
        }
        pcsa::step(state, s, config);
    }

    config.ordered = false;
    state = pcsa::init_swarm(s, 8, config);
    bool any_unsorted = false;
    for (const auto& p : state.particles)
        any_unsorted = any_unsorted || !std::is_sorted(p.position.begin(), p.position.end());
    CHECK(any_unsorted);
    for (int it = 0; it < 30; ++it)
        pcsa::step(state, s, config);
    for (const auto& p : state.particles) {
        auto sorted = p.position;
        std::sort(sorted.begin(), sorted.end());
        CHECK(p.energy == pcsa::energy(s, pcsa::BoundaryVector(s.a(), s.b(), sorted)));
    }
}

TEST_CASE("ordered swarms escape where unordered ones stall", "[pso][chirp]")
{
    // with 30 segments the unordered swarm collapses onto a poor local minimum
    const auto chirp = pcsa::make_chirp(20000);
    pcsa::SwarmConfig config;
    config.particles = 100;
    config.max_iter = 800;
    config.seed = 2;
    const double ordered = pcsa::run(chirp, 30, config).energy;
    config.ordered = false;
    const double unordered = pcsa::run(chirp, 30, config).energy;
    CHECK(ordered < unordered);
}
