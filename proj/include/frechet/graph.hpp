#ifndef FRECHET_GRAPH_HPP
#define FRECHET_GRAPH_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <span>
#include <utility>
#include <vector>

namespace frechet {

/// Number of unordered vertex pairs on n vertices, n(n-1)/2.
constexpr std::size_t pair_count(std::size_t n) noexcept {
    return n < 2 ? 0 : n * (n - 1) / 2;
}

/// An unordered vertex pair (i, j) with 1 <= i < j <= n, together with its
/// position in the canonical pair order. The canonical order is row-major
/// over the strict upper triangle: (1,2), (1,3), ..., (1,n), (2,3), ...
struct PairIndex {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t linear = 0;

    friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

/// Linear position of the pair (i, j), 1-based vertices. Accepts i > j.
/// Throws validation_error for i == j or out-of-range vertices.
std::size_t pair_to_linear(std::size_t i, std::size_t j, std::size_t n);

/// Inverse of pair_to_linear. Throws validation_error when linear >= pair_count(n).
PairIndex linear_to_pair(std::size_t linear, std::size_t n);

/// Labeled simple graph on vertices {1, ..., n}, one bit per unordered pair in
/// canonical pair order. Symmetry and the zero diagonal are structural.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;

    /// Empty graph on n vertices.
    explicit AdjacencyMatrix(std::size_t n);

    static AdjacencyMatrix empty(std::size_t n) { return AdjacencyMatrix(n); }
    static AdjacencyMatrix complete(std::size_t n);

    /// Graph whose bitset, read as an integer, equals code. Requires pair_count(n) <= 64.
    static AdjacencyMatrix from_code(std::size_t n, std::uint64_t code);

    /// Graph from a list of 1-based edges.
    static AdjacencyMatrix from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t pair_count() const noexcept { return frechet::pair_count(n_); }

    bool has_edge(std::size_t linear) const noexcept {
        return (words_[linear >> 6] >> (linear & 63)) & 1u;
    }
    bool has_edge(std::size_t i, std::size_t j) const { return has_edge(pair_to_linear(i, j, n_)); }

    /// Sets the pair at canonical position linear.
    void set_pair(std::size_t linear, bool present = true) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (linear & 63);
        if (present) {
            words_[linear >> 6] |= mask;
        } else {
            words_[linear >> 6] &= ~mask;
        }
    }
    void set_edge(std::size_t i, std::size_t j, bool present = true) { set_pair(pair_to_linear(i, j, n_), present); }

    /// Raw bitset words, least significant word first. Unused high bits are zero.
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    /// Integer value of the bitset. Requires pair_count() <= 64.
    std::uint64_t code() const;

    /// Edges E(B) in canonical order.
    std::vector<PairIndex> edges() const;

    friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

    /// Orders graphs of equal n by the integer value of their bitset, which
    /// coincides with enumeration order.
    friend std::strong_ordering operator<=>(const AdjacencyMatrix& a, const AdjacencyMatrix& b);

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// |E(a)|.
std::size_t edge_count(const AdjacencyMatrix& a) noexcept;

/// Number of pairs on which a and b disagree. Throws size_error on mismatched n.
std::size_t hamming_distance(const AdjacencyMatrix& a, const AdjacencyMatrix& b);

/// d_H(a, b)^2 assembled from the split of a's entries along the edges and
/// non-edges of b:
///
///   (sum a)^2 + |E(b)|^2 + 2|E(b)| (sum_{nonedge(b)} a - sum_{edge(b)} a)
///     - 4 sum_{edge(b)} sum_{nonedge(b)} a a'
///
/// Exact integer arithmetic; the result always equals hamming_distance(a, b)^2.
std::int64_t squared_hamming_decomposed(const AdjacencyMatrix& a, const AdjacencyMatrix& b);

inline constexpr std::size_t max_enumeration_vertices = 7;

/// All 2^m graphs on n vertices in increasing bitset order.
class GraphSpace {
public:
    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = AdjacencyMatrix;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = AdjacencyMatrix;

        iterator() = default;
        iterator(std::size_t n, std::uint64_t code) : n_(n), code_(code) {}

        AdjacencyMatrix operator*() const { return AdjacencyMatrix::from_code(n_, code_); }
        iterator& operator++() {
            ++code_;
            return *this;
        }
        iterator operator++(int) {
            auto copy = *this;
            ++code_;
            return copy;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.code_ == b.code_ && a.n_ == b.n_; }

    private:
        std::size_t n_ = 0;
        std::uint64_t code_ = 0;
    };

    explicit GraphSpace(std::size_t n) : n_(n) {}

    std::size_t vertex_count() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return std::uint64_t{1} << frechet::pair_count(n_); }
    iterator begin() const { return {n_, 0}; }
    iterator end() const { return {n_, size()}; }

private:
    std::size_t n_;
};

/// Range over every graph on n vertices. Throws budget_error when n exceeds
/// max_enumeration_vertices.
GraphSpace enumerate_all_graphs(std::size_t n);

/// Graph text format: first line n, then one "i j" line per edge (1-based).
AdjacencyMatrix read_graph(std::istream& in);
void write_graph(std::ostream& out, const AdjacencyMatrix& g);

}

#endif
