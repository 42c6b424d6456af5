#include "frechet/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "frechet/errors.hpp"

namespace frechet {

namespace {

std::size_t word_count(std::size_t n) {
    return (pair_count(n) + 63) / 64;
}

// First linear index of 0-based row r.
std::size_t row_offset(std::size_t r, std::size_t n) {
    return r * (2 * n - r - 1) / 2;
}

void require_same_size(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    if (a.vertex_count() != b.vertex_count()) {
        throw size_error("graphs have different vertex counts: " + std::to_string(a.vertex_count()) + " vs " +
                         std::to_string(b.vertex_count()));
    }
}

}

std::size_t pair_to_linear(std::size_t i, std::size_t j, std::size_t n) {
    if (i > j) {
        std::swap(i, j);
    }
    if (i == j) {
        throw validation_error("self-loop (" + std::to_string(i) + "," + std::to_string(j) + ") is not a vertex pair");
    }
    if (i < 1 || j > n) {
        throw validation_error("pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for n=" +
                               std::to_string(n));
    }
    return row_offset(i - 1, n) + (j - i - 1);
}

PairIndex linear_to_pair(std::size_t linear, std::size_t n) {
    if (linear >= pair_count(n)) {
        throw validation_error("pair index " + std::to_string(linear) + " out of range for n=" + std::to_string(n));
    }
    // Largest row r with row_offset(r) <= linear, from the quadratic, then nudged.
    const double half = static_cast<double>(n) - 0.5;
    const double disc = half * half - 2.0 * static_cast<double>(linear);
    auto r = static_cast<std::size_t>(std::max(0.0, std::floor(half - std::sqrt(std::max(0.0, disc)))));
    while (r > 0 && row_offset(r, n) > linear) {
        --r;
    }
    while (r + 1 < n && row_offset(r + 1, n) <= linear) {
        ++r;
    }
    const std::size_t i = r + 1;
    const std::size_t j = i + 1 + (linear - row_offset(r, n));
    return {i, j, linear};
}

AdjacencyMatrix::AdjacencyMatrix(std::size_t n) : n_(n), words_(word_count(n), 0) {}

AdjacencyMatrix AdjacencyMatrix::complete(std::size_t n) {
    AdjacencyMatrix g(n);
    const std::size_t m = g.pair_count();
    for (std::size_t w = 0; w < g.words_.size(); ++w) {
        const std::size_t bits = std::min<std::size_t>(64, m - 64 * w);
        g.words_[w] = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    }
    return g;
}

AdjacencyMatrix AdjacencyMatrix::from_code(std::size_t n, std::uint64_t code) {
    const std::size_t m = frechet::pair_count(n);
    if (m > 64) {
        throw budget_error("from_code needs at most 64 vertex pairs, n=" + std::to_string(n) + " has " +
                           std::to_string(m));
    }
    if (m < 64 && (code >> m) != 0) {
        throw validation_error("graph code has bits beyond pair " + std::to_string(m));
    }
    AdjacencyMatrix g(n);
    if (m > 0) {
        g.words_[0] = code;
    }
    return g;
}

AdjacencyMatrix AdjacencyMatrix::from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
    AdjacencyMatrix g(n);
    for (const auto& [i, j] : edges) {
        g.set_edge(i, j);
    }
    return g;
}

std::uint64_t AdjacencyMatrix::code() const {
    if (pair_count() > 64) {
        throw budget_error("graph with " + std::to_string(pair_count()) + " pairs does not fit a 64-bit code");
    }
    return words_.empty() ? 0 : words_[0];
}

std::vector<PairIndex> AdjacencyMatrix::edges() const {
    std::vector<PairIndex> out;
    out.reserve(edge_count(*this));
    std::size_t linear = 0;
    for (std::size_t i = 1; i <= n_; ++i) {
        for (std::size_t j = i + 1; j <= n_; ++j, ++linear) {
            if (has_edge(linear)) {
                out.push_back({i, j, linear});
            }
        }
    }
    return out;
}

std::strong_ordering operator<=>(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) {
        return c;
    }
    for (std::size_t w = a.words_.size(); w-- > 0;) {
        if (auto c = a.words_[w] <=> b.words_[w]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

std::size_t edge_count(const AdjacencyMatrix& a) noexcept {
    std::size_t count = 0;
    for (auto w : a.words()) {
        count += static_cast<std::size_t>(std::popcount(w));
    }
    return count;
}

std::size_t hamming_distance(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    require_same_size(a, b);
    const auto wa = a.words();
    const auto wb = b.words();
    std::size_t d = 0;
    for (std::size_t w = 0; w < wa.size(); ++w) {
        d += static_cast<std::size_t>(std::popcount(wa[w] ^ wb[w]));
    }
    return d;
}

std::int64_t squared_hamming_decomposed(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    require_same_size(a, b);
    const auto wa = a.words();
    const auto wb = b.words();
    std::int64_t a_on_edges = 0;     // sum of a_ij over E(b)
    std::int64_t a_on_nonedges = 0;  // sum of a_ij over the complement of E(b)
    std::int64_t b_edges = 0;        // |E(b)|
    for (std::size_t w = 0; w < wa.size(); ++w) {
        a_on_edges += std::popcount(wa[w] & wb[w]);
        a_on_nonedges += std::popcount(wa[w] & ~wb[w]);
        b_edges += std::popcount(wb[w]);
    }
    const std::int64_t a_total = a_on_edges + a_on_nonedges;
    // The edge x non-edge double sum of a_ij a_i'j' factors into the product of the two sums.
    const std::int64_t cross = a_on_edges * a_on_nonedges;
    return a_total * a_total + b_edges * b_edges + 2 * b_edges * (a_on_nonedges - a_on_edges) - 4 * cross;
}

GraphSpace enumerate_all_graphs(std::size_t n) {
    if (n > max_enumeration_vertices) {
        throw budget_error("exhaustive enumeration is capped at n <= " + std::to_string(max_enumeration_vertices) +
                           " (2^21 graphs); requested n=" + std::to_string(n));
    }
    return GraphSpace(n);
}

AdjacencyMatrix read_graph(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    bool have_n = false;
    AdjacencyMatrix g;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        if (!have_n) {
            if (!(fields >> n)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) {
                    continue;
                }
                throw validation_error("graph file: expected vertex count on line " + std::to_string(line_no));
            }
            have_n = true;
            g = AdjacencyMatrix(n);
            continue;
        }
        long long i = 0;
        long long j = 0;
        if (!(fields >> i)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            throw validation_error("graph file: malformed edge on line " + std::to_string(line_no));
        }
        if (!(fields >> j) || i < 1 || j < 1) {
            throw validation_error("graph file: malformed edge on line " + std::to_string(line_no));
        }
        g.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    if (!have_n) {
        throw validation_error("graph file: missing vertex count");
    }
    return g;
}

void write_graph(std::ostream& out, const AdjacencyMatrix& g) {
    out << g.vertex_count() << '\n';
    for (const auto& e : g.edges()) {
        out << e.i << ' ' << e.j << '\n';
    }
}

}
