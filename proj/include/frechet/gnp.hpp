#ifndef FRECHET_GNP_HPP
#define FRECHET_GNP_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "frechet/graph.hpp"

namespace frechet {

/// Edge probabilities p_ij of the inhomogeneous Erdos-Renyi model G(n, P),
/// stored over the strict upper triangle in canonical pair order.
class ProbabilityMatrix {
public:
    ProbabilityMatrix() = default;

    /// Throws validation_error unless values.size() == pair_count(n) and every
    /// entry is a finite number in [0, 1].
    ProbabilityMatrix(std::size_t n, std::vector<double> values);

    static ProbabilityMatrix uniform(std::size_t n, double p);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t pair_count() const noexcept { return p_.size(); }

    double operator[](std::size_t linear) const noexcept { return p_[linear]; }
    double at(std::size_t i, std::size_t j) const { return p_[pair_to_linear(i, j, n_)]; }

    std::span<const double> values() const noexcept { return p_; }

    friend bool operator==(const ProbabilityMatrix&, const ProbabilityMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> p_;
};

/// N graphs on a common vertex set, in draw order.
class GraphSample {
public:
    /// Throws validation_error when graphs is empty or the vertex counts differ.
    explicit GraphSample(std::vector<AdjacencyMatrix> graphs, std::optional<std::uint64_t> seed = std::nullopt);

    std::size_t vertex_count() const noexcept { return graphs_.front().vertex_count(); }
    std::size_t size() const noexcept { return graphs_.size(); }
    const AdjacencyMatrix& operator[](std::size_t k) const noexcept { return graphs_[k]; }
    std::span<const AdjacencyMatrix> graphs() const noexcept { return graphs_; }
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }

    auto begin() const noexcept { return graphs_.begin(); }
    auto end() const noexcept { return graphs_.end(); }

    friend bool operator==(const GraphSample&, const GraphSample&) = default;

private:
    std::vector<AdjacencyMatrix> graphs_;
    std::optional<std::uint64_t> seed_;
};

/// Shape parameters of the Beta(nu, omega) law used to draw random P.
struct BetaConfig {
    double nu = 1.0;
    double omega = 1.0;

    /// Throws validation_error unless both shapes are finite and positive.
    void validate() const;
    double mean() const noexcept { return nu / (nu + omega); }
    double variance() const noexcept {
        const double s = nu + omega;
        return nu * omega / (s * s * (s + 1.0));
    }
};

/// Probability of the graph a under G(n, P):  prod p^a (1-p)^(1-a), with 0^0 = 1.
double measure_of(const AdjacencyMatrix& a, const ProbabilityMatrix& P);

/// N independent draws from G(n, P). Pair e of graph k is decided by the Philox
/// cell (stream = k, index = e) under key seed, so the result is a pure function
/// of (P, N, seed).
GraphSample sample_graphs(const ProbabilityMatrix& P, std::size_t N, std::uint64_t seed);

/// Per-pair edge counts sum_k a_ij^(k), canonical order.
std::vector<std::uint32_t> edge_frequencies(const GraphSample& sample);

/// P with each upper-triangle entry drawn independently from Beta(nu, omega),
/// as X / (X + Y) with X ~ Gamma(nu), Y ~ Gamma(omega).
ProbabilityMatrix random_probability_matrix(std::size_t n, const BetaConfig& cfg, std::uint64_t seed);

/// CSV: a header line holding the vertex count n, then one "i,j,p" line per
/// pair in canonical order with p printed to 17 significant digits.
void write_probability_csv(std::ostream& out, const ProbabilityMatrix& P);
ProbabilityMatrix read_probability_csv(std::istream& in);

}

#endif
