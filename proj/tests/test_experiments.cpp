#include <doctest.h>

#include <cmath>
#include <sstream>

#include "frechet/errors.hpp"
#include "frechet/estimators.hpp"
#include "frechet/experiments.hpp"

using namespace frechet;

namespace {

// P(K > N/2) for K ~ BetaBinomial(N, a, b): the chance that a pair with
// p ~ Beta(a, b) lands in the strict-majority graph.
double beta_binomial_upper_tail(std::size_t N, double a, double b) {
    const double log_beta_ab = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    double tail = 0.0;
    for (std::size_t k = N / 2 + 1; k <= N; ++k) {
        const double kk = static_cast<double>(k);
        const double nn = static_cast<double>(N);
        const double log_choose = std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1);
        const double log_beta = std::lgamma(kk + a) + std::lgamma(nn - kk + b) - std::lgamma(nn + a + b);
        tail += std::exp(log_choose + log_beta - log_beta_ab);
    }
    return tail;
}

std::string sweep_csv(const SweepConfig& cfg) {
    std::ostringstream out;
    write_sweep_csv(out, run_threshold_sweep(cfg));
    return out.str();
}

}

TEST_CASE("SweepConfig validation") {
    SweepConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.nu_values = {64};
    CHECK_THROWS_AS(cfg.validate(), validation_error);
    cfg.nu_values = {0};
    CHECK_THROWS_AS(cfg.validate(), validation_error);
    cfg = SweepConfig{};
    cfg.realizations = 0;
    CHECK_THROWS_AS(cfg.validate(), validation_error);
    cfg = SweepConfig{};
    cfg.N = 0;
    CHECK_THROWS_AS(cfg.validate(), validation_error);
    cfg = SweepConfig{};
    cfg.nu_values.clear();
    CHECK_THROWS_AS(cfg.validate(), validation_error);
    CHECK(parse_normalization("with-diagonal") == EdgeNormalization::with_diagonal);
    CHECK_THROWS_AS(parse_normalization("other"), validation_error);
    CHECK(full_scale_sweep_config().n == 512);
    CHECK(full_scale_sweep_config().N == 1000);
}

TEST_CASE("threshold sweep switches from empty to complete across one half") {
    SweepConfig cfg;
    const auto rows = run_threshold_sweep(cfg);
    REQUIRE(rows.size() == cfg.nu_values.size());

    CHECK(rows[0].nu == 8);
    CHECK(rows[0].omega == 56);
    CHECK(rows[0].mean_edge_prob == 0.125);
    CHECK(rows[0].frac_edges < 0.01);
    CHECK(std::abs(rows[0].realized_mean_p - 0.125) < 0.005);
    CHECK(rows[6].nu == 56);
    CHECK(rows[6].frac_edges > 0.99);

    // nu = 32: the expected fraction is the beta-binomial mass above N/2.
    const double expected = beta_binomial_upper_tail(cfg.N, 32, 32);
    CHECK(expected == doctest::Approx(0.47).epsilon(0.05));
    CHECK(std::abs(rows[3].frac_edges - expected) < 0.015);

    int inversions = 0;
    for (std::size_t v = 1; v < rows.size(); ++v) {
        CHECK(rows[v].frac_edges >= 0.0);
        CHECK(rows[v].frac_edges <= 1.0);
        if (rows[v].frac_edges < rows[v - 1].frac_edges) {
            ++inversions;
            CHECK(rows[v - 1].frac_edges - rows[v].frac_edges <= 0.02);
        }
    }
    CHECK(inversions <= 1);
}

TEST_CASE("threshold sweep is deterministic and normalization only rescales") {
    SweepConfig cfg;
    cfg.n = 24;
    cfg.N = 51;
    cfg.realizations = 4;
    cfg.nu_values = {20, 31, 33, 44};
    const auto first = sweep_csv(cfg);
    CHECK(first == sweep_csv(cfg));
    CHECK(first.rfind("nu,omega,mean_p,realized_mean_p,frac_edges,stddev,n,N,seed\n", 0) == 0);

    const auto simple = run_threshold_sweep(cfg);
    cfg.normalization = EdgeNormalization::with_diagonal;
    const auto diagonal = run_threshold_sweep(cfg);
    for (std::size_t v = 0; v < simple.size(); ++v) {
        CHECK(diagonal[v].frac_edges == doctest::Approx(simple[v].frac_edges * 23.0 / 25.0).epsilon(1e-12));
    }

    cfg.seed += 1;
    CHECK(first != sweep_csv(cfg));
}

TEST_CASE("concentration alpha") {
    CHECK(concentration_alpha(16, 0.1) == doctest::Approx(std::sqrt(std::log(16.0 / std::sqrt(0.2)))));
    CHECK_THROWS_AS(concentration_alpha(16, 0.0), validation_error);
    CHECK_THROWS_AS(concentration_alpha(16, 1.0), validation_error);
}

TEST_CASE("concentration check at large N") {
    const auto P = random_probability_matrix(8, {2, 2}, 1);
    const std::vector<std::size_t> sizes = {100000};
    const auto study = run_concentration_check(P, sizes, 0.1, 3, 42);
    REQUIRE(study.reports.size() == 1);
    // Hoeffding: with a 28-pair union bound, 0.01 holds with probability > 1 - 10^-7.
    CHECK(study.reports[0].max_max_deviation < 0.01);
    CHECK(study.reports[0].violation_rate == 0.0);
    CHECK(study.reports[0].bound_satisfied);
    CHECK(std::isnan(study.loglog_slope));

    const std::vector<std::size_t> none;
    CHECK_THROWS_AS(run_concentration_check(P, none, 0.1, 3, 1), validation_error);
    CHECK_THROWS_AS(run_concentration_check(P, sizes, 1.5, 3, 1), validation_error);
    CHECK_THROWS_AS(run_concentration_check(P, sizes, 0.1, 0, 1), validation_error);

    std::ostringstream out;
    write_concentration_csv(out, study);
    CHECK(out.str().rfind("n,N,delta,alpha,bound,", 0) == 0);
}

TEST_CASE("F2 concentration") {
    const std::vector<std::size_t> sizes = {10, 100};
    const auto certain = run_f2_concentration(ProbabilityMatrix::uniform(5, 1.0), AdjacencyMatrix::complete(5), sizes,
                                              3, 1);
    for (const auto& r : certain.reports) {
        CHECK(r.population_f2 == 0.0);
        CHECK(r.median_abs_error == 0.0);
    }

    const auto P = random_probability_matrix(6, {2, 2}, 7);
    const auto B = threshold_graph(P, 0.5);
    const std::vector<std::size_t> big = {10000};
    const auto study = run_f2_concentration(P, B, big, 20, 3);
    CHECK(study.reports[0].median_relative_error < 0.05);

    CHECK_THROWS_AS(run_f2_concentration(ProbabilityMatrix::uniform(129, 0.5), AdjacencyMatrix(129), sizes, 1, 1),
                    budget_error);
    CHECK_THROWS_AS(run_f2_concentration(P, AdjacencyMatrix(5), sizes, 1, 1), size_error);

    std::ostringstream out;
    write_f2_concentration_csv(out, study);
    CHECK(out.str().rfind("n,N,population_f2,", 0) == 0);
}

TEST_CASE("loglog_slope recovers a power law") {
    const std::vector<double> x = {1, 10, 100, 1000};
    const std::vector<double> y = {3, 3 / std::sqrt(10.0), 0.3, 3 / std::sqrt(1000.0)};
    CHECK(loglog_slope(x, y) == doctest::Approx(-0.5).epsilon(1e-12));
    const std::vector<double> with_zero = {1, 0, 1, 1};
    CHECK(std::isnan(loglog_slope(x, with_zero)));
}
