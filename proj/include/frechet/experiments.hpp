#ifndef FRECHET_EXPERIMENTS_HPP
#define FRECHET_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "frechet/gnp.hpp"
#include "frechet/graph.hpp"

namespace frechet {

/// How the edge count of the sample mean graph is turned into a fraction.
enum class EdgeNormalization {
    simple,         // |E| / (n(n-1)/2), the number of vertex pairs
    with_diagonal,  // 2|E| / (n(n+1)), as if the n diagonal entries were pairs too
};

std::string_view to_string(EdgeNormalization mode) noexcept;
EdgeNormalization parse_normalization(std::string_view text);

/// Beta-random P sweep: for each nu, draw P ~ Beta(nu, total - nu) entrywise,
/// draw N graphs, take the strict majority graph and record its edge fraction.
struct SweepConfig {
    std::size_t n = 64;
    std::size_t N = 200;
    std::vector<double> nu_values = {8, 16, 24, 32, 40, 48, 56, 63.9};
    double total = 64.0;
    std::size_t realizations = 16;
    std::uint64_t seed = 20220101;
    EdgeNormalization normalization = EdgeNormalization::simple;

    /// Throws validation_error.
    void validate() const;
};

/// n = 512, N = 1000; the remaining fields keep their defaults.
SweepConfig full_scale_sweep_config();

struct SweepResult {
    double nu = 0.0;
    double omega = 0.0;
    double mean_edge_prob = 0.0;   // nu / total
    double realized_mean_p = 0.0;  // mean of the drawn p_ij, averaged over realizations
    double frac_edges = 0.0;       // normalized edge count, averaged over realizations
    double stddev = 0.0;           // of frac_edges across realizations (n-1 denominator)
    std::size_t n = 0;
    std::size_t N = 0;
    std::uint64_t seed = 0;
};

/// One row per nu, in the order of cfg.nu_values. Cell (nu index v,
/// realization r) uses seed derive_seed(cfg.seed, v, r), so rows do not depend
/// on how cells are scheduled.
std::vector<SweepResult> run_threshold_sweep(const SweepConfig& cfg);

/// Header nu,omega,mean_p,realized_mean_p,frac_edges,stddev,n,N,seed.
void write_sweep_csv(std::ostream& out, std::span<const SweepResult> rows);

/// Uniform deviation radius of the per-pair sample means: with probability at
/// least 1 - delta every |mean_ij - p_ij| <= alpha / sqrt(N), where
/// alpha = sqrt(log(n / sqrt(2 delta))).
double concentration_alpha(std::size_t n, double delta);

struct ConcentrationReport {
    std::size_t n = 0;
    std::size_t N = 0;
    double delta = 0.0;
    double alpha = 0.0;
    double bound = 0.0;                 // alpha / sqrt(N)
    double median_max_deviation = 0.0;  // median over trials of max_ij |mean_ij - p_ij|
    double max_max_deviation = 0.0;     // worst trial
    std::size_t trials = 0;
    double violation_rate = 0.0;  // fraction of trials with max deviation > bound
    bool bound_satisfied = false; // violation_rate <= delta
};

struct ConcentrationStudy {
    std::vector<ConcentrationReport> reports;
    double loglog_slope = 0.0;  // of median_max_deviation against N
};

/// Trial t at sample size N_values[i] draws with seed derive_seed(seed, i, t).
ConcentrationStudy run_concentration_check(const ProbabilityMatrix& P, std::span<const std::size_t> N_values,
                                           double delta, std::size_t trials, std::uint64_t seed);

void write_concentration_csv(std::ostream& out, const ConcentrationStudy& study);

struct F2ConcentrationReport {
    std::size_t n = 0;
    std::size_t N = 0;
    std::size_t trials = 0;
    double population_f2 = 0.0;
    double median_abs_error = 0.0;  // median over trials of |sample F2(B) - F2(B)|
    double mean_abs_error = 0.0;
    double median_relative_error = 0.0;
};

struct F2ConcentrationStudy {
    std::vector<F2ConcentrationReport> reports;
    double loglog_slope = 0.0;  // of median_abs_error against N
};

/// Deviation of the closed-form sample F2 at a fixed graph B from its
/// population value. Throws budget_error above max_correlation_vertices.
F2ConcentrationStudy run_f2_concentration(const ProbabilityMatrix& P, const AdjacencyMatrix& B,
                                          std::span<const std::size_t> N_values, std::size_t trials,
                                          std::uint64_t seed);

void write_f2_concentration_csv(std::ostream& out, const F2ConcentrationStudy& study);

/// Least-squares slope of log(y) against log(x). NaN when any value is not positive.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}

#endif
