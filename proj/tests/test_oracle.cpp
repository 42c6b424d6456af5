#include <doctest.h>

#include <cmath>
#include <random>

#include "frechet/errors.hpp"
#include "frechet/oracle.hpp"

using namespace frechet;

namespace {

ProbabilityMatrix off_half_p(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> low(0.1, 0.45);
    std::uniform_real_distribution<double> high(0.55, 0.9);
    std::vector<double> p(pair_count(n));
    for (auto& x : p) {
        x = (rng() & 1u) ? high(rng) : low(rng);
    }
    return ProbabilityMatrix(n, std::move(p));
}

}

TEST_CASE("population oracle trivial cases") {
    const auto certain = oracle_population(ProbabilityMatrix::uniform(4, 1.0), 2);
    REQUIRE(certain.unique());
    CHECK(certain.minimizers.front() == AdjacencyMatrix::complete(4));
    CHECK(certain.objective == 0.0);
    CHECK(certain.evaluated == 64);
    CHECK(certain.kind == FrechetKind::population_mean);

    for (int q : {1, 2}) {
        const auto coin = oracle_population(ProbabilityMatrix::uniform(2, 0.5), q);
        CHECK(coin.minimizers.size() == 2);
        CHECK(coin.contains(AdjacencyMatrix::empty(2)));
        CHECK(coin.contains(AdjacencyMatrix::complete(2)));
    }
}

TEST_CASE("population oracle errors") {
    CHECK_THROWS_AS(oracle_population(ProbabilityMatrix::uniform(3, 0.2), 3), validation_error);
    CHECK_THROWS_AS(oracle_population(ProbabilityMatrix::uniform(6, 0.2), 2), budget_error);
}

TEST_CASE("population oracle minimizer is P thresholded at one half") {
    std::mt19937_64 rng(21);
    for (std::size_t n : {3u, 4u, 5u}) {
        for (int rep = 0; rep < 4; ++rep) {
            const auto P = off_half_p(n, rng);
            for (int q : {1, 2}) {
                const auto result = oracle_population(P, q);
                REQUIRE(result.unique());
                CHECK(result.minimizers.front() == population_frechet_mean(P).graph);
                const double closed = q == 1 ? population_f1(result.minimizers.front(), P)
                                             : population_f2(result.minimizers.front(), P);
                CHECK(std::abs(result.objective - closed) < 1e-9);
            }
        }
    }
}

TEST_CASE("population oracle ties are exposed when an entry is exactly one half") {
    std::mt19937_64 rng(22);
    auto P = off_half_p(4, rng);
    std::vector<double> values(P.values().begin(), P.values().end());
    values[2] = 0.5;
    const ProbabilityMatrix tied(4, values);
    const auto result = oracle_population(tied, 2);
    CHECK(result.minimizers.size() == 2);
    const auto estimate = population_frechet_mean(tied);
    CHECK(result.contains(estimate.graph));
    CHECK(estimate.non_unique);
}

TEST_CASE("population oracle separates members from non-members") {
    std::mt19937_64 rng(23);
    const auto P = off_half_p(4, rng);
    const auto result = oracle_population(P, 2);
    for (const auto& B : enumerate_all_graphs(4)) {
        const double value = population_f2(B, P);
        if (result.contains(B)) {
            CHECK(std::abs(value - result.objective) < 1e-10);
        } else {
            CHECK(value > result.objective);
        }
    }
}

TEST_CASE("sample oracle trivial cases") {
    std::mt19937_64 rng(24);
    AdjacencyMatrix g(5);
    for (std::size_t e = 0; e < g.pair_count(); ++e) {
        g.set_pair(e, (rng() & 1u) != 0);
    }
    for (int q : {1, 2}) {
        const auto copies = oracle_sample(GraphSample(std::vector<AdjacencyMatrix>(6, g)), q);
        REQUIRE(copies.unique());
        CHECK(copies.minimizers.front() == g);
        CHECK(copies.objective == 0.0);

        const auto single = oracle_sample(GraphSample({g}), q);
        REQUIRE(single.unique());
        CHECK(single.minimizers.front() == g);
    }
    CHECK_THROWS_AS(oracle_sample(GraphSample({AdjacencyMatrix(8)}), 1), budget_error);
    CHECK_THROWS_AS(oracle_sample(GraphSample({AdjacencyMatrix(3)}), 0), validation_error);
}

TEST_CASE("sample oracle agrees with the majority rules, n = 4, N = 101") {
    std::mt19937_64 rng(25);
    for (int rep = 0; rep < 10; ++rep) {
        const auto P = off_half_p(4, rng);
        const auto sample = sample_graphs(P, 101, rng());
        const auto median = oracle_sample(sample, 1);
        const auto mean = oracle_sample(sample, 2);
        REQUIRE(median.unique());
        REQUIRE(mean.unique());
        CHECK(median.minimizers.front() == sample_frechet_median(sample).graph);
        CHECK(mean.minimizers.front() == sample_frechet_mean(sample).graph);
        CHECK(median.kind == FrechetKind::sample_median);

        const auto stats = sample_statistics(sample);
        CHECK(std::abs(mean.objective - sample_f2(mean.minimizers.front(), stats)) < 1e-9);
        CHECK(std::abs(median.objective - sample_f1(median.minimizers.front(), stats)) < 1e-12);
    }
}

TEST_CASE("sample oracle reports every minimizer at an even-N tie") {
    // Pair 0 in exactly half the graphs: the sample F1 is flat along that pair.
    std::vector<AdjacencyMatrix> graphs(4, AdjacencyMatrix(3));
    graphs[0].set_pair(0);
    graphs[1].set_pair(0);
    const auto result = oracle_sample(GraphSample(graphs), 1);
    CHECK(result.minimizers.size() == 2);
    CHECK(result.contains(sample_frechet_median(GraphSample(graphs)).graph));
    CHECK(result.minimizers.front() < result.minimizers.back());
}

TEST_CASE("strict majority is not always the sample F2 minimizer") {
    // Pairs 0 and 1 both appear in one graph of three; neither has a majority.
    const GraphSample sample({AdjacencyMatrix::from_code(3, 3), AdjacencyMatrix(3), AdjacencyMatrix(3)});
    const auto majority = sample_frechet_mean(sample).graph;
    CHECK(majority == AdjacencyMatrix::empty(3));

    const auto mean = oracle_sample(sample, 2);
    REQUIRE(mean.minimizers.size() == 2);
    CHECK(mean.contains(AdjacencyMatrix::from_code(3, 1)));
    CHECK(mean.contains(AdjacencyMatrix::from_code(3, 2)));
    CHECK_FALSE(mean.contains(majority));
    CHECK(mean.objective == doctest::Approx(1.0));
    CHECK(sample_f2(majority, sample_statistics(sample)) == doctest::Approx(4.0 / 3.0));

    // The median side of the rule is unaffected.
    CHECK(oracle_sample(sample, 1).contains(sample_frechet_median(sample).graph));
}

TEST_CASE("sample oracle at the n = 7 cap") {
    std::mt19937_64 rng(26);
    const auto sample = sample_graphs(off_half_p(7, rng), 3, 99);
    const auto result = oracle_sample(sample, 1);
    CHECK(result.evaluated == (std::uint64_t{1} << 21));
    REQUIRE(result.unique());
    CHECK(result.minimizers.front() == sample_frechet_median(sample).graph);
}

TEST_CASE("OracleResult JSON") {
    const auto result = oracle_population(ProbabilityMatrix::uniform(2, 0.5), 1);
    const auto json = to_json(result);
    CHECK(json.at("n") == 2);
    CHECK(json.at("method") == "exhaustive");
    CHECK(json.at("kind") == "population_median");
    CHECK(json.at("minimizer_count") == 2);
    CHECK(json.at("evaluated") == 2);
    CHECK(json.at("non_unique") == true);
    CHECK(json.at("edges") == nlohmann::json::array());
    CHECK(json.at("minimizers") == nlohmann::json::parse("[[], [[1,2]]]"));
}
