#include "frechet/estimators.hpp"

#include <bit>
#include <limits>
#include <string>

#include "frechet/errors.hpp"

namespace frechet {

namespace {

void require_match(const AdjacencyMatrix& B, std::size_t n, const char* what) {
    if (B.vertex_count() != n) {
        throw size_error(std::string("graph has n=") + std::to_string(B.vertex_count()) + " but " + what +
                         " has n=" + std::to_string(n));
    }
}

std::int64_t narrow(__int128 value) {
    if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min()) {
        throw budget_error("exact Frechet function value overflows 64-bit numerator");
    }
    return static_cast<std::int64_t>(value);
}

bool any_half(const ProbabilityMatrix& P) {
    for (double p : P.values()) {
        if (p == 0.5) {
            return true;
        }
    }
    return false;
}

bool any_tie(std::span<const std::uint32_t> counts, std::size_t N) {
    for (auto c : counts) {
        if (2 * static_cast<std::uint64_t>(c) == N) {
            return true;
        }
    }
    return false;
}

}

std::string_view to_string(FrechetKind kind) noexcept {
    switch (kind) {
        case FrechetKind::population_median:
            return "population_median";
        case FrechetKind::population_mean:
            return "population_mean";
        case FrechetKind::sample_median:
            return "sample_median";
        case FrechetKind::sample_mean:
            return "sample_mean";
    }
    return "unknown";
}

std::string_view to_string(EstimateMethod method) noexcept {
    switch (method) {
        case EstimateMethod::closed_form_threshold:
            return "closed_form_threshold";
        case EstimateMethod::majority_rule:
            return "majority_rule";
        case EstimateMethod::exhaustive:
            return "exhaustive";
    }
    return "unknown";
}

nlohmann::json to_json(const FrechetEstimate& estimate) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : estimate.graph.edges()) {
        edges.push_back({e.i, e.j});
    }
    return {
        {"n", estimate.graph.vertex_count()},
        {"kind", to_string(estimate.kind)},
        {"method", to_string(estimate.method)},
        {"objective", estimate.objective},
        {"edges", std::move(edges)},
        {"non_unique", estimate.non_unique},
    };
}

std::vector<double> SampleStatistics::means() const {
    std::vector<double> out(counts_.size());
    for (std::size_t e = 0; e < counts_.size(); ++e) {
        out[e] = mean(e);
    }
    return out;
}

SampleStatistics sample_statistics(const GraphSample& sample, StatisticsDepth depth) {
    const std::size_t n = sample.vertex_count();
    if (depth == StatisticsDepth::with_correlation && n > max_correlation_vertices) {
        throw budget_error("pair correlation table is capped at n <= " + std::to_string(max_correlation_vertices) +
                           "; requested n=" + std::to_string(n));
    }
    SampleStatistics stats;
    stats.n_ = n;
    stats.N_ = sample.size();
    stats.counts_ = edge_frequencies(sample);
    if (depth == StatisticsDepth::with_correlation) {
        const std::size_t m = stats.counts_.size();
        stats.co_counts_.assign(m * m, 0);
        std::vector<std::size_t> present;
        present.reserve(m);
        for (const auto& g : sample) {
            present.clear();
            const auto words = g.words();
            for (std::size_t w = 0; w < words.size(); ++w) {
                for (std::uint64_t bits = words[w]; bits; bits &= bits - 1) {
                    present.push_back(64 * w + static_cast<std::size_t>(std::countr_zero(bits)));
                }
            }
            for (std::size_t e : present) {
                auto* row = stats.co_counts_.data() + e * m;
                for (std::size_t f : present) {
                    ++row[f];
                }
            }
        }
    }
    return stats;
}

double population_f1(const AdjacencyMatrix& B, const ProbabilityMatrix& P) {
    require_match(B, P.vertex_count(), "P");
    double on_edges = 0.0;
    double total = 0.0;
    for (std::size_t e = 0; e < P.pair_count(); ++e) {
        total += P[e];
        if (B.has_edge(e)) {
            on_edges += 1.0 - 2.0 * P[e];
        }
    }
    return on_edges + total;
}

double population_f2(const AdjacencyMatrix& B, const ProbabilityMatrix& P) {
    require_match(B, P.vertex_count(), "P");
    double variance = 0.0;
    for (double p : P.values()) {
        variance += p * (1.0 - p);
    }
    const double location = population_f1(B, P);
    return location * location + variance;
}

Rational sample_f1_exact(const AdjacencyMatrix& B, const SampleStatistics& stats) {
    require_match(B, stats.vertex_count(), "sample");
    const auto N = static_cast<std::int64_t>(stats.sample_size());
    std::int64_t numerator = 0;
    for (std::size_t e = 0; e < stats.pair_count(); ++e) {
        const std::int64_t c = stats.count(e);
        numerator += c;
        if (B.has_edge(e)) {
            numerator += N - 2 * c;
        }
    }
    return {numerator, N};
}

double sample_f1(const AdjacencyMatrix& B, const SampleStatistics& stats) {
    return sample_f1_exact(B, stats).value();
}

Rational sample_f2_exact(const AdjacencyMatrix& B, const SampleStatistics& stats) {
    require_match(B, stats.vertex_count(), "sample");
    if (!stats.has_correlation()) {
        throw validation_error("sample F2 needs pair correlations; build the statistics with_correlation");
    }
    // Everything is scaled by N^2: mean -> c/N, correlation -> r/N.
    const auto N = static_cast<__int128>(stats.sample_size());
    const std::size_t m = stats.pair_count();

    const __int128 location = sample_f1_exact(B, stats).numerator;  // N * [sum_E (1 - 2m) + sum m]
    __int128 result = location * location;

    for (std::size_t e = 0; e < m; ++e) {
        const __int128 c = stats.count(e);
        result += c * (N - c);
    }

    __int128 off_diagonal = 0;
    __int128 edge_nonedge = 0;
    for (std::size_t e = 0; e < m; ++e) {
        const __int128 ce = stats.count(e);
        const bool e_in = B.has_edge(e);
        for (std::size_t f = 0; f < m; ++f) {
            if (f == e) {
                continue;
            }
            const __int128 deviation = ce * stats.count(f) - N * stats.co_count(e, f);
            off_diagonal += deviation;
            if (e_in && !B.has_edge(f)) {
                edge_nonedge += deviation;
            }
        }
    }
    result += -off_diagonal + 4 * edge_nonedge;
    return {narrow(result), narrow(N * N)};
}

double sample_f2(const AdjacencyMatrix& B, const SampleStatistics& stats) {
    return sample_f2_exact(B, stats).value();
}

AdjacencyMatrix threshold_graph(std::size_t n, std::span<const double> values, double t) {
    if (values.size() != pair_count(n)) {
        throw size_error("threshold input has " + std::to_string(values.size()) + " entries, n=" + std::to_string(n) +
                         " needs " + std::to_string(pair_count(n)));
    }
    AdjacencyMatrix g(n);
    for (std::size_t e = 0; e < values.size(); ++e) {
        if (values[e] > t) {
            g.set_pair(e);
        }
    }
    return g;
}

AdjacencyMatrix threshold_graph(const ProbabilityMatrix& P, double t) {
    return threshold_graph(P.vertex_count(), P.values(), t);
}

AdjacencyMatrix majority_graph(std::size_t n, std::span<const std::uint32_t> counts, std::size_t N, MajorityRule rule) {
    if (counts.size() != pair_count(n)) {
        throw size_error("edge counts have " + std::to_string(counts.size()) + " entries, n=" + std::to_string(n) +
                         " needs " + std::to_string(pair_count(n)));
    }
    AdjacencyMatrix g(n);
    for (std::size_t e = 0; e < counts.size(); ++e) {
        // Compare 2c against N to stay in integers.
        const std::uint64_t twice = 2 * static_cast<std::uint64_t>(counts[e]);
        const bool present = rule == MajorityRule::at_least_half ? twice >= N : twice > N;
        if (present) {
            g.set_pair(e);
        }
    }
    return g;
}

FrechetEstimate population_frechet_mean(const ProbabilityMatrix& P) {
    FrechetEstimate out;
    out.graph = threshold_graph(P, 0.5);
    out.objective = population_f2(out.graph, P);
    out.kind = FrechetKind::population_mean;
    out.method = EstimateMethod::closed_form_threshold;
    out.non_unique = any_half(P);
    return out;
}

FrechetEstimate population_frechet_median(const ProbabilityMatrix& P) {
    FrechetEstimate out;
    out.graph = threshold_graph(P, 0.5);
    out.objective = population_f1(out.graph, P);
    out.kind = FrechetKind::population_median;
    out.method = EstimateMethod::closed_form_threshold;
    out.non_unique = any_half(P);
    return out;
}

FrechetEstimate sample_frechet_median(const GraphSample& sample) {
    const auto stats = sample_statistics(sample, StatisticsDepth::means_only);
    FrechetEstimate out;
    out.graph = majority_graph(sample.vertex_count(), stats.counts(), sample.size(), MajorityRule::at_least_half);
    out.objective = sample_f1(out.graph, stats);
    out.kind = FrechetKind::sample_median;
    out.method = EstimateMethod::majority_rule;
    out.non_unique = any_tie(stats.counts(), sample.size());
    return out;
}

FrechetEstimate sample_frechet_mean(const GraphSample& sample) {
    FrechetEstimate out;
    out.kind = FrechetKind::sample_mean;
    out.method = EstimateMethod::majority_rule;
    const std::size_t n = sample.vertex_count();
    if (n <= max_correlation_vertices) {
        const auto stats = sample_statistics(sample, StatisticsDepth::with_correlation);
        out.graph = majority_graph(n, stats.counts(), sample.size(), MajorityRule::more_than_half);
        out.objective = sample_f2(out.graph, stats);
        out.non_unique = any_tie(stats.counts(), sample.size());
    } else {
        const auto counts = edge_frequencies(sample);
        out.graph = majority_graph(n, counts, sample.size(), MajorityRule::more_than_half);
        long double total = 0.0L;
        for (const auto& g : sample) {
            const auto d = static_cast<long double>(hamming_distance(g, out.graph));
            total += d * d;
        }
        out.objective = static_cast<double>(total / static_cast<long double>(sample.size()));
        out.non_unique = any_tie(counts, sample.size());
    }
    return out;
}

}
