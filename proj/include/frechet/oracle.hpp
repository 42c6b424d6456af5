#ifndef FRECHET_ORACLE_HPP
#define FRECHET_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "frechet/estimators.hpp"
#include "frechet/gnp.hpp"
#include "frechet/graph.hpp"

namespace frechet {

/// Every global minimizer of a Frechet function over the full graph space,
/// found by brute force.
struct OracleResult {
    std::vector<AdjacencyMatrix> minimizers;  // increasing bitset order
    double objective = 0.0;
    std::uint64_t evaluated = 0;  // graphs scanned, 2^m
    FrechetKind kind = FrechetKind::population_mean;

    bool unique() const noexcept { return minimizers.size() == 1; }
    bool contains(const AdjacencyMatrix& g) const;
};

/// Largest n accepted by oracle_population (the scan is 4^m measure-weighted terms).
inline constexpr std::size_t max_population_oracle_vertices = 5;
/// Largest n accepted by oracle_sample.
inline constexpr std::size_t max_sample_oracle_vertices = 7;

/// Minimizers of F_q(B) = sum_A d_H(A,B)^q P(A), both sums over all graphs.
/// Values within 1e-12 (relative to max(1, min)) of the minimum count as ties.
/// q must be 1 or 2.
OracleResult oracle_population(const ProbabilityMatrix& P, int q);

/// Minimizers of (1/N) sum_k d_H(A^(k), B)^q over all B. Integer arithmetic,
/// so ties are exact.
OracleResult oracle_sample(const GraphSample& sample, int q);

/// JSON mirroring FrechetEstimate (first minimizer under "edges"), plus
/// "minimizers", "minimizer_count" and "evaluated".
nlohmann::json to_json(const OracleResult& result);

}

#endif
