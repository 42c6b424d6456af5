#include "frechet/gnp.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "frechet/errors.hpp"
#include "frechet/parallel.hpp"
#include "frechet/rng.hpp"

namespace frechet {

ProbabilityMatrix::ProbabilityMatrix(std::size_t n, std::vector<double> values) : n_(n), p_(std::move(values)) {
    if (p_.size() != frechet::pair_count(n)) {
        throw validation_error("probability matrix for n=" + std::to_string(n) + " needs " +
                               std::to_string(frechet::pair_count(n)) + " entries, got " + std::to_string(p_.size()));
    }
    for (std::size_t e = 0; e < p_.size(); ++e) {
        if (!std::isfinite(p_[e]) || p_[e] < 0.0 || p_[e] > 1.0) {
            const auto pair = linear_to_pair(e, n);
            throw validation_error("edge probability p(" + std::to_string(pair.i) + "," + std::to_string(pair.j) +
                                   ") is outside [0,1]");
        }
    }
}

ProbabilityMatrix ProbabilityMatrix::uniform(std::size_t n, double p) {
    return ProbabilityMatrix(n, std::vector<double>(frechet::pair_count(n), p));
}

GraphSample::GraphSample(std::vector<AdjacencyMatrix> graphs, std::optional<std::uint64_t> seed)
    : graphs_(std::move(graphs)), seed_(seed) {
    if (graphs_.empty()) {
        throw validation_error("a graph sample needs at least one graph");
    }
    const std::size_t n = graphs_.front().vertex_count();
    for (const auto& g : graphs_) {
        if (g.vertex_count() != n) {
            throw validation_error("sample graphs must share a vertex count (" + std::to_string(n) + " vs " +
                                   std::to_string(g.vertex_count()) + ")");
        }
    }
}

void BetaConfig::validate() const {
    if (!(std::isfinite(nu) && nu > 0.0) || !(std::isfinite(omega) && omega > 0.0)) {
        throw validation_error("beta shapes must be positive and finite (nu=" + std::to_string(nu) +
                               ", omega=" + std::to_string(omega) + ")");
    }
}

double measure_of(const AdjacencyMatrix& a, const ProbabilityMatrix& P) {
    if (a.vertex_count() != P.vertex_count()) {
        throw size_error("graph has n=" + std::to_string(a.vertex_count()) + " but P has n=" +
                         std::to_string(P.vertex_count()));
    }
    double log_mass = 0.0;
    for (std::size_t e = 0; e < P.pair_count(); ++e) {
        const double p = P[e];
        if (a.has_edge(e)) {
            if (p == 0.0) {
                return 0.0;
            }
            log_mass += std::log(p);
        } else {
            if (p == 1.0) {
                return 0.0;
            }
            log_mass += std::log1p(-p);
        }
    }
    return std::exp(log_mass);
}

GraphSample sample_graphs(const ProbabilityMatrix& P, std::size_t N, std::uint64_t seed) {
    if (N < 1) {
        throw validation_error("sample size N must be at least 1");
    }
    const std::size_t n = P.vertex_count();
    const std::size_t m = P.pair_count();
    const Philox4x32 philox(seed);
    std::vector<AdjacencyMatrix> graphs(N, AdjacencyMatrix(n));
    parallel_for(N, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            auto& g = graphs[k];
            for (std::size_t e = 0; e < m; ++e) {
                const double p = P[e];
                // p == 1 must always fire and p == 0 never; u lies in [0, 1).
                if (to_unit_interval(philox.bits(k, e)) < p) {
                    g.set_pair(e);
                }
            }
        }
    });
    return GraphSample(std::move(graphs), seed);
}

std::vector<std::uint32_t> edge_frequencies(const GraphSample& sample) {
    const std::size_t m = sample[0].pair_count();
    std::vector<std::uint32_t> counts(m, 0);
    for (const auto& g : sample) {
        const auto words = g.words();
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::uint64_t bits = words[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                ++counts[64 * w + static_cast<std::size_t>(b)];
                bits &= bits - 1;
            }
        }
    }
    return counts;
}

ProbabilityMatrix random_probability_matrix(std::size_t n, const BetaConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const std::size_t m = pair_count(n);
    std::vector<double> p(m);
    parallel_for(m, [&](std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e) {
            StreamEngine engine(seed, e);
            std::gamma_distribution<double> gx(cfg.nu, 1.0);
            std::gamma_distribution<double> gy(cfg.omega, 1.0);
            const double x = gx(engine);
            const double y = gy(engine);
            if (x + y > 0.0) {
                p[e] = x / (x + y);
            } else {
                // Both gamma draws underflowed (tiny shapes); fall back to the limiting Bernoulli(mean).
                p[e] = to_unit_interval(engine()) < cfg.mean() ? 1.0 : 0.0;
            }
        }
    });
    return ProbabilityMatrix(n, std::move(p));
}

void write_probability_csv(std::ostream& out, const ProbabilityMatrix& P) {
    const auto old_precision = out.precision(17);
    out << P.vertex_count() << '\n';
    for (std::size_t e = 0; e < P.pair_count(); ++e) {
        const auto pair = linear_to_pair(e, P.vertex_count());
        out << pair.i << ',' << pair.j << ',' << P[e] << '\n';
    }
    out.precision(old_precision);
}

ProbabilityMatrix read_probability_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                return true;
            }
        }
        return false;
    };
    if (!next_line()) {
        throw validation_error("probability CSV: missing vertex count header");
    }
    std::size_t n = 0;
    {
        std::istringstream header(line);
        if (!(header >> n)) {
            throw validation_error("probability CSV: line 1 must hold the vertex count n");
        }
    }
    const std::size_t m = pair_count(n);
    std::vector<double> p(m, std::numeric_limits<double>::quiet_NaN());
    std::vector<bool> seen(m, false);
    while (next_line()) {
        std::istringstream fields(line);
        long long i = 0;
        long long j = 0;
        double value = 0.0;
        char c1 = 0;
        char c2 = 0;
        if (!(fields >> i >> c1 >> j >> c2 >> value) || c1 != ',' || c2 != ',' || i < 1 || j < 1) {
            throw validation_error("probability CSV: malformed row on line " + std::to_string(line_no));
        }
        const std::size_t e = pair_to_linear(static_cast<std::size_t>(i), static_cast<std::size_t>(j), n);
        if (seen[e]) {
            throw validation_error("probability CSV: duplicate pair on line " + std::to_string(line_no));
        }
        seen[e] = true;
        p[e] = value;
    }
    for (std::size_t e = 0; e < m; ++e) {
        if (!seen[e]) {
            const auto pair = linear_to_pair(e, n);
            throw validation_error("probability CSV: missing pair " + std::to_string(pair.i) + "," +
                                   std::to_string(pair.j));
        }
    }
    return ProbabilityMatrix(n, std::move(p));
}

}
