#ifndef FRECHET_ESTIMATORS_HPP
#define FRECHET_ESTIMATORS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "frechet/gnp.hpp"
#include "frechet/graph.hpp"

namespace frechet {

enum class FrechetKind {
    population_median,  // minimizer of F1
    population_mean,    // minimizer of F2
    sample_median,      // minimizer of the sample F1
    sample_mean,        // minimizer of the sample F2
};

enum class EstimateMethod {
    closed_form_threshold,
    majority_rule,
    exhaustive,
};

std::string_view to_string(FrechetKind kind) noexcept;
std::string_view to_string(EstimateMethod method) noexcept;

struct FrechetEstimate {
    AdjacencyMatrix graph;
    double objective = 0.0;
    FrechetKind kind = FrechetKind::population_mean;
    EstimateMethod method = EstimateMethod::closed_form_threshold;
    // Set when some pair sits exactly on the decision boundary, so more than
    // one graph attains the minimum and `graph` is the conventional pick.
    bool non_unique = false;
};

/// {n, kind, method, objective, edges: [[i,j],...], non_unique}
nlohmann::json to_json(const FrechetEstimate& estimate);

/// A value held exactly as numerator / denominator.
struct Rational {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;

    double value() const noexcept { return static_cast<double>(numerator) / static_cast<double>(denominator); }
    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return static_cast<__int128>(a.numerator) * b.denominator == static_cast<__int128>(b.numerator) * a.denominator;
    }
};

/// Largest n for which the m x m pair correlation table is built.
inline constexpr std::size_t max_correlation_vertices = 128;

enum class StatisticsDepth { means_only, with_correlation };

/// Per-pair sample means and per-pair-pair sample correlations of a GraphSample,
/// held as integer counts so every derived quantity is an exact multiple of 1/N.
class SampleStatistics {
public:
    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t sample_size() const noexcept { return N_; }
    std::size_t pair_count() const noexcept { return counts_.size(); }
    bool has_correlation() const noexcept { return !co_counts_.empty() || counts_.empty(); }

    /// sum_k a_e^(k)
    std::uint32_t count(std::size_t e) const noexcept { return counts_[e]; }
    std::span<const std::uint32_t> counts() const noexcept { return counts_; }
    /// sum_k a_e^(k) a_f^(k); requires has_correlation().
    std::uint32_t co_count(std::size_t e, std::size_t f) const noexcept { return co_counts_[e * counts_.size() + f]; }

    double mean(std::size_t e) const noexcept { return static_cast<double>(counts_[e]) / static_cast<double>(N_); }
    double correlation(std::size_t e, std::size_t f) const noexcept {
        return static_cast<double>(co_count(e, f)) / static_cast<double>(N_);
    }
    std::vector<double> means() const;

private:
    friend SampleStatistics sample_statistics(const GraphSample&, StatisticsDepth);

    std::size_t n_ = 0;
    std::size_t N_ = 0;
    std::vector<std::uint32_t> counts_;
    std::vector<std::uint32_t> co_counts_;  // dense m x m, row-major
};

/// Throws budget_error when correlations are requested for n > max_correlation_vertices.
SampleStatistics sample_statistics(const GraphSample& sample,
                                   StatisticsDepth depth = StatisticsDepth::with_correlation);

// Population Frechet functions in closed form.
double population_f1(const AdjacencyMatrix& B, const ProbabilityMatrix& P);
double population_f2(const AdjacencyMatrix& B, const ProbabilityMatrix& P);

/// Sample F1 as an exact multiple of 1/N.
Rational sample_f1_exact(const AdjacencyMatrix& B, const SampleStatistics& stats);
double sample_f1(const AdjacencyMatrix& B, const SampleStatistics& stats);

/// Sample F2 from means and correlations, as an exact multiple of 1/N^2:
///
///   [sum_E (1 - 2m_e) + sum m_e]^2 + sum m_e (1 - m_e)
///     - sum_{e != f} (m_e m_f - r_ef) + 4 sum_{e in E} sum_{f not in E} (m_e m_f - r_ef)
///
/// where m is the sample mean and r the sample correlation. Requires correlations.
Rational sample_f2_exact(const AdjacencyMatrix& B, const SampleStatistics& stats);
double sample_f2(const AdjacencyMatrix& B, const SampleStatistics& stats);

/// Edge (i,j) iff values[(i,j)] > t.
AdjacencyMatrix threshold_graph(std::size_t n, std::span<const double> values, double t);
AdjacencyMatrix threshold_graph(const ProbabilityMatrix& P, double t);

enum class MajorityRule {
    at_least_half,   // sum_k a^(k) >= N/2
    more_than_half,  // sum_k a^(k) >  N/2
};

AdjacencyMatrix majority_graph(std::size_t n, std::span<const std::uint32_t> counts, std::size_t N, MajorityRule rule);

/// Threshold P at 1/2; objective F2.
FrechetEstimate population_frechet_mean(const ProbabilityMatrix& P);
/// Same graph as the mean; objective F1.
FrechetEstimate population_frechet_median(const ProbabilityMatrix& P);

/// Majority rule with ties kept (>= N/2); objective sample F1.
FrechetEstimate sample_frechet_median(const GraphSample& sample);
/// Majority rule with ties dropped (> N/2); objective sample F2. Above
/// max_correlation_vertices the objective is the direct average of squared
/// distances instead of the closed form (the two are equal).
/// Not always the exact argmin of sample F2: with counts near N/2, sample
/// correlations between pairs can favour a neighbouring graph (see oracle_sample).
FrechetEstimate sample_frechet_mean(const GraphSample& sample);

}

#endif
