#include <doctest.h>

#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include "frechet/errors.hpp"
#include "frechet/graph.hpp"

using namespace frechet;

namespace {

AdjacencyMatrix random_graph(std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    AdjacencyMatrix g(n);
    for (std::size_t e = 0; e < g.pair_count(); ++e) {
        g.set_pair(e, coin(rng));
    }
    return g;
}

// Reference distance straight from the definition, addressing pairs by (i, j).
std::size_t direct_distance(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    std::size_t d = 0;
    for (std::size_t i = 1; i <= a.vertex_count(); ++i) {
        for (std::size_t j = i + 1; j <= a.vertex_count(); ++j) {
            d += a.has_edge(i, j) != b.has_edge(i, j) ? 1 : 0;
        }
    }
    return d;
}

}

TEST_CASE("pair indexing is row-major over the upper triangle") {
    CHECK(pair_to_linear(1, 2, 5) == 0);
    CHECK(pair_to_linear(1, 5, 5) == 3);
    CHECK(pair_to_linear(2, 3, 5) == 4);
    CHECK(pair_to_linear(4, 5, 5) == 9);
    CHECK(pair_to_linear(3, 1, 5) == pair_to_linear(1, 3, 5));
    CHECK_THROWS_AS(pair_to_linear(2, 2, 5), validation_error);
    CHECK_THROWS_AS(pair_to_linear(0, 2, 5), validation_error);
    CHECK_THROWS_AS(pair_to_linear(1, 6, 5), validation_error);
    CHECK_THROWS_AS(linear_to_pair(10, 5), validation_error);
}

TEST_CASE("pair indexing round-trips for every pair up to n = 64") {
    for (std::size_t n = 2; n <= 64; ++n) {
        std::size_t expected = 0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = i + 1; j <= n; ++j, ++expected) {
                const auto linear = pair_to_linear(i, j, n);
                REQUIRE(linear == expected);
                const auto back = linear_to_pair(linear, n);
                REQUIRE(back.i == i);
                REQUIRE(back.j == j);
                REQUIRE(back.linear == linear);
            }
        }
        REQUIRE(expected == pair_count(n));
    }
}

TEST_CASE("linear_to_pair survives large n") {
    for (std::size_t n : {1000u, 4097u, 50000u}) {
        const std::size_t m = pair_count(n);
        for (std::size_t linear : {std::size_t{0}, m / 3, m / 2, m - n, m - 2, m - 1}) {
            const auto p = linear_to_pair(linear, n);
            CHECK(pair_to_linear(p.i, p.j, n) == linear);
        }
    }
}

TEST_CASE("edge_count") {
    CHECK(edge_count(AdjacencyMatrix::empty(4)) == 0);
    CHECK(edge_count(AdjacencyMatrix::complete(4)) == 6);
    AdjacencyMatrix g(6);
    g.set_edge(2, 5);
    CHECK(edge_count(g) == 1);
    CHECK(edge_count(AdjacencyMatrix::complete(100)) == pair_count(100));
}

TEST_CASE("hamming_distance examples") {
    std::mt19937_64 rng(7);
    const auto g = random_graph(9, 0.4, rng);
    CHECK(hamming_distance(g, g) == 0);
    CHECK(hamming_distance(AdjacencyMatrix::complete(3), AdjacencyMatrix::empty(3)) == 3);

    AdjacencyMatrix path(3);
    path.set_edge(1, 2);
    path.set_edge(2, 3);
    AdjacencyMatrix chord(3);
    chord.set_edge(1, 3);
    CHECK(direct_distance(path, chord) == 3);
    CHECK(hamming_distance(path, chord) == 3);

    CHECK_THROWS_AS(hamming_distance(AdjacencyMatrix(3), AdjacencyMatrix(4)), size_error);
}

TEST_CASE("hamming_distance matches the definition and is a metric") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 20);
        const auto a = random_graph(n, 0.5, rng);
        const auto b = random_graph(n, 0.3, rng);
        const auto c = random_graph(n, 0.7, rng);
        REQUIRE(hamming_distance(a, b) == direct_distance(a, b));
        REQUIRE(hamming_distance(a, b) == hamming_distance(b, a));
        REQUIRE(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
        REQUIRE((hamming_distance(a, b) == 0) == (a == b));
    }
}

TEST_CASE("squared decomposition examples") {
    CHECK(squared_hamming_decomposed(AdjacencyMatrix(3), AdjacencyMatrix(3)) == 0);
    CHECK(squared_hamming_decomposed(AdjacencyMatrix::empty(3), AdjacencyMatrix::complete(3)) == 9);
    CHECK_THROWS_AS(squared_hamming_decomposed(AdjacencyMatrix(3), AdjacencyMatrix(5)), size_error);
}

TEST_CASE("squared decomposition equals the squared distance on all pairs for n <= 4") {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (const auto& a : enumerate_all_graphs(n)) {
            for (const auto& b : enumerate_all_graphs(n)) {
                const auto d = static_cast<std::int64_t>(hamming_distance(a, b));
                REQUIRE(squared_hamming_decomposed(a, b) == d * d);
            }
        }
    }
}

TEST_CASE("squared decomposition equals the squared distance on random pairs, n = 5..16") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    for (std::size_t n = 5; n <= 16; ++n) {
        for (int trial = 0; trial < 10000; ++trial) {
            const auto a = random_graph(n, density(rng), rng);
            const auto b = random_graph(n, density(rng), rng);
            const auto d = static_cast<std::int64_t>(hamming_distance(a, b));
            REQUIRE(squared_hamming_decomposed(a, b) == d * d);
        }
    }
}

TEST_CASE("enumerate_all_graphs") {
    CHECK(enumerate_all_graphs(2).size() == 2);
    CHECK(enumerate_all_graphs(3).size() == 8);

    std::set<AdjacencyMatrix> seen;
    std::uint64_t expected_code = 0;
    for (const auto& g : enumerate_all_graphs(5)) {
        CHECK(g.code() == expected_code++);
        seen.insert(g);
    }
    CHECK(seen.size() == 1024);
    CHECK(expected_code == 1024);

    CHECK(enumerate_all_graphs(7).size() == (std::uint64_t{1} << 21));
    try {
        (void)enumerate_all_graphs(8);
        FAIL("expected budget_error");
    } catch (const budget_error& e) {
        CHECK(std::string(e.what()).find("n <= 7") != std::string::npos);
    }
}

TEST_CASE("ordering follows the bitset integer") {
    const auto a = AdjacencyMatrix::from_code(4, 5);
    const auto b = AdjacencyMatrix::from_code(4, 12);
    CHECK(a < b);
    CHECK(AdjacencyMatrix::complete(12) > AdjacencyMatrix::empty(12));
    auto high = AdjacencyMatrix::empty(12);
    high.set_pair(high.pair_count() - 1);
    auto low = AdjacencyMatrix::complete(12);
    low.set_pair(high.pair_count() - 1, false);
    CHECK(low < high);
    CHECK_THROWS_AS(AdjacencyMatrix::from_code(3, 8), validation_error);
}

TEST_CASE("graph text format") {
    std::istringstream in("4\n3 4\n1 2\n\n2 4\n");
    const auto g = read_graph(in);
    CHECK(g.vertex_count() == 4);
    CHECK(edge_count(g) == 3);
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(2, 4));
    CHECK(g.has_edge(3, 4));

    std::ostringstream out;
    write_graph(out, g);
    CHECK(out.str() == "4\n1 2\n2 4\n3 4\n");

    std::istringstream again(out.str());
    CHECK(read_graph(again) == g);

    std::istringstream self_loop("3\n2 2\n");
    CHECK_THROWS_AS(read_graph(self_loop), validation_error);
    std::istringstream out_of_range("3\n1 4\n");
    CHECK_THROWS_AS(read_graph(out_of_range), validation_error);
    std::istringstream half_edge("3\n1\n");
    CHECK_THROWS_AS(read_graph(half_edge), validation_error);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_graph(empty), validation_error);
}
