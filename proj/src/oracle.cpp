#include "frechet/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "frechet/errors.hpp"
#include "frechet/parallel.hpp"

namespace frechet {

namespace {

void require_exponent(int q) {
    if (q != 1 && q != 2) {
        throw validation_error("Frechet exponent q must be 1 or 2, got " + std::to_string(q));
    }
}

// Per-block running minimum. Blocks are merged in block order and every list is
// kept in increasing code order, so the final list does not depend on threads.
template <class Value>
struct BlockMin {
    Value best = std::numeric_limits<Value>::max();
    std::vector<std::uint64_t> codes;
};

}

bool OracleResult::contains(const AdjacencyMatrix& g) const {
    return std::binary_search(minimizers.begin(), minimizers.end(), g);
}

OracleResult oracle_population(const ProbabilityMatrix& P, int q) {
    require_exponent(q);
    const std::size_t n = P.vertex_count();
    if (n > max_population_oracle_vertices) {
        throw budget_error("population oracle is capped at n <= " + std::to_string(max_population_oracle_vertices) +
                           "; requested n=" + std::to_string(n));
    }
    const auto space = enumerate_all_graphs(n);
    const std::uint64_t total = space.size();

    std::vector<double> mass(total);
    for (std::uint64_t code = 0; code < total; ++code) {
        mass[code] = measure_of(AdjacencyMatrix::from_code(n, code), P);
    }

    std::vector<double> objective(total);
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        for (std::uint64_t b = begin; b < end; ++b) {
            double sum = 0.0;
            for (std::uint64_t a = 0; a < total; ++a) {
                const auto d = static_cast<double>(std::popcount(a ^ b));
                sum += (q == 1 ? d : d * d) * mass[a];
            }
            objective[b] = sum;
        }
    });

    const double best = *std::min_element(objective.begin(), objective.end());
    const double tolerance = 1e-12 * std::max(1.0, best);
    OracleResult result;
    result.objective = best;
    result.evaluated = total;
    result.kind = q == 1 ? FrechetKind::population_median : FrechetKind::population_mean;
    for (std::uint64_t b = 0; b < total; ++b) {
        if (objective[b] <= best + tolerance) {
            result.minimizers.push_back(AdjacencyMatrix::from_code(n, b));
        }
    }
    return result;
}

OracleResult oracle_sample(const GraphSample& sample, int q) {
    require_exponent(q);
    const std::size_t n = sample.vertex_count();
    if (n > max_sample_oracle_vertices) {
        throw budget_error("sample oracle is capped at n <= " + std::to_string(max_sample_oracle_vertices) +
                           "; requested n=" + std::to_string(n));
    }
    const auto space = enumerate_all_graphs(n);
    const std::uint64_t total = space.size();

    std::vector<std::uint64_t> codes;
    codes.reserve(sample.size());
    for (const auto& g : sample) {
        codes.push_back(g.code());
    }

    const std::size_t blocks = std::min<std::size_t>(default_thread_count(), total);
    std::vector<BlockMin<std::uint64_t>> partial(blocks);
    parallel_for(
        blocks,
        [&](std::size_t block_begin, std::size_t block_end) {
            for (std::size_t blk = block_begin; blk < block_end; ++blk) {
                auto& local = partial[blk];
                const std::uint64_t lo = total * blk / blocks;
                const std::uint64_t hi = total * (blk + 1) / blocks;
                for (std::uint64_t b = lo; b < hi; ++b) {
                    std::uint64_t scaled = 0;  // N times the sample Frechet function
                    for (auto a : codes) {
                        const auto d = static_cast<std::uint64_t>(std::popcount(a ^ b));
                        scaled += q == 1 ? d : d * d;
                    }
                    if (scaled < local.best) {
                        local.best = scaled;
                        local.codes.clear();
                    }
                    if (scaled == local.best) {
                        local.codes.push_back(b);
                    }
                }
            }
        },
        blocks);

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const auto& p : partial) {
        best = std::min(best, p.best);
    }
    OracleResult result;
    result.objective = static_cast<double>(best) / static_cast<double>(sample.size());
    result.evaluated = total;
    result.kind = q == 1 ? FrechetKind::sample_median : FrechetKind::sample_mean;
    for (const auto& p : partial) {
        if (p.best == best) {
            for (auto code : p.codes) {
                result.minimizers.push_back(AdjacencyMatrix::from_code(n, code));
            }
        }
    }
    return result;
}

nlohmann::json to_json(const OracleResult& result) {
    auto edge_list = [](const AdjacencyMatrix& g) {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& e : g.edges()) {
            edges.push_back({e.i, e.j});
        }
        return edges;
    };
    nlohmann::json all = nlohmann::json::array();
    for (const auto& g : result.minimizers) {
        all.push_back(edge_list(g));
    }
    const std::size_t n = result.minimizers.empty() ? 0 : result.minimizers.front().vertex_count();
    return {
        {"n", n},
        {"kind", to_string(result.kind)},
        {"method", to_string(EstimateMethod::exhaustive)},
        {"objective", result.objective},
        {"edges", result.minimizers.empty() ? nlohmann::json::array() : edge_list(result.minimizers.front())},
        {"non_unique", result.minimizers.size() > 1},
        {"minimizers", std::move(all)},
        {"minimizer_count", result.minimizers.size()},
        {"evaluated", result.evaluated},
    };
}

}
