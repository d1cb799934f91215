#ifndef PCSA_DP_ORACLE_HPP
#define PCSA_DP_ORACLE_HPP

#include "pcsa/approximation.hpp"
#include "pcsa/signal.hpp"

#include <cstddef>

namespace pcsa {

/// Candidate boundaries are the M*refine + 1 uniform points a + k*delta/refine.
struct GridSpec
{
    std::size_t refine = 1;
};

struct OracleResult
{
    BoundaryVector boundaries;
    double energy = 0.0;
};

/// Grid-restricted minimiser of E by optimal-partitioning dynamic programming,
/// O(N * (M r)^2) time. Among equal-cost predecessors the smallest boundary
/// index wins. Throws std::invalid_argument if N exceeds M*refine.
OracleResult dp_optimal(const DiscretizedSignal& signal, std::size_t segments, GridSpec grid = {});

/// Upper limit on the number of boundary tuples brute_force will enumerate.
inline constexpr double brute_force_limit = 1e6;

/// Exhaustive search over strictly increasing grid tuples; returns the
/// lexicographically smallest minimiser. Throws std::length_error if there
/// are more than brute_force_limit tuples.
OracleResult brute_force(const DiscretizedSignal& signal, std::size_t segments, GridSpec grid = {});

} // namespace pcsa

#endif // PCSA_DP_ORACLE_HPP
