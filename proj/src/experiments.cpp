#include "frechet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

#include "frechet/errors.hpp"
#include "frechet/estimators.hpp"
#include "frechet/parallel.hpp"
#include "frechet/rng.hpp"

namespace frechet {

namespace {

double median_of(std::vector<double> values) {
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

void require_sizes(std::span<const std::size_t> N_values, std::size_t trials) {
    if (N_values.empty()) {
        throw validation_error("at least one sample size is required");
    }
    for (auto N : N_values) {
        if (N < 1) {
            throw validation_error("sample sizes must be at least 1");
        }
    }
    if (trials < 1) {
        throw validation_error("trials must be at least 1");
    }
}

}

std::string_view to_string(EdgeNormalization mode) noexcept {
    return mode == EdgeNormalization::with_diagonal ? "with-diagonal" : "simple";
}

EdgeNormalization parse_normalization(std::string_view text) {
    if (text == "simple") {
        return EdgeNormalization::simple;
    }
    if (text == "with-diagonal") {
        return EdgeNormalization::with_diagonal;
    }
    throw validation_error("normalization must be 'simple' or 'with-diagonal', got '" + std::string(text) + "'");
}

void SweepConfig::validate() const {
    if (n < 2) {
        throw validation_error("sweep needs n >= 2");
    }
    if (N < 1) {
        throw validation_error("sweep needs N >= 1");
    }
    if (realizations < 1) {
        throw validation_error("sweep needs at least one realization");
    }
    if (!(std::isfinite(total) && total > 0.0)) {
        throw validation_error("beta total nu + omega must be positive");
    }
    if (nu_values.empty()) {
        throw validation_error("sweep needs at least one nu value");
    }
    for (double nu : nu_values) {
        if (!(nu > 0.0 && nu < total)) {
            throw validation_error("every nu must lie in (0, " + std::to_string(total) + "), got " +
                                   std::to_string(nu));
        }
    }
}

SweepConfig full_scale_sweep_config() {
    SweepConfig cfg;
    cfg.n = 512;
    cfg.N = 1000;
    return cfg;
}

std::vector<SweepResult> run_threshold_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::size_t points = cfg.nu_values.size();
    const std::size_t cells = points * cfg.realizations;
    const double pairs = static_cast<double>(pair_count(cfg.n));
    const double denominator = cfg.normalization == EdgeNormalization::simple
                                   ? pairs
                                   : static_cast<double>(cfg.n) * static_cast<double>(cfg.n + 1) / 2.0;

    std::vector<double> fraction(cells);
    std::vector<double> realized(cells);
    parallel_for(cells, [&](std::size_t begin, std::size_t end) {
        for (std::size_t cell = begin; cell < end; ++cell) {
            const std::size_t v = cell / cfg.realizations;
            const std::size_t r = cell % cfg.realizations;
            const std::uint64_t cell_seed = derive_seed(cfg.seed, v, r);
            const BetaConfig beta{cfg.nu_values[v], cfg.total - cfg.nu_values[v]};
            const auto P = random_probability_matrix(cfg.n, beta, derive_seed(cell_seed, 0));
            const auto sample = sample_graphs(P, cfg.N, derive_seed(cell_seed, 1));
            const auto counts = edge_frequencies(sample);
            const auto mean_graph = majority_graph(cfg.n, counts, cfg.N, MajorityRule::more_than_half);
            fraction[cell] = static_cast<double>(edge_count(mean_graph)) / denominator;
            double sum_p = 0.0;
            for (double p : P.values()) {
                sum_p += p;
            }
            realized[cell] = sum_p / pairs;
        }
    });

    std::vector<SweepResult> rows;
    rows.reserve(points);
    const auto R = static_cast<double>(cfg.realizations);
    for (std::size_t v = 0; v < points; ++v) {
        SweepResult row;
        row.nu = cfg.nu_values[v];
        row.omega = cfg.total - row.nu;
        row.mean_edge_prob = row.nu / cfg.total;
        row.n = cfg.n;
        row.N = cfg.N;
        row.seed = cfg.seed;
        double sum = 0.0;
        double sum_p = 0.0;
        for (std::size_t r = 0; r < cfg.realizations; ++r) {
            sum += fraction[v * cfg.realizations + r];
            sum_p += realized[v * cfg.realizations + r];
        }
        row.frac_edges = sum / R;
        row.realized_mean_p = sum_p / R;
        if (cfg.realizations > 1) {
            double ss = 0.0;
            for (std::size_t r = 0; r < cfg.realizations; ++r) {
                const double d = fraction[v * cfg.realizations + r] - row.frac_edges;
                ss += d * d;
            }
            row.stddev = std::sqrt(ss / (R - 1.0));
        }
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepResult> rows) {
    out << "nu,omega,mean_p,realized_mean_p,frac_edges,stddev,n,N,seed\n";
    const auto flags = out.flags();
    const auto precision = out.precision(10);
    for (const auto& row : rows) {
        out << row.nu << ',' << row.omega << ',' << row.mean_edge_prob << ',' << row.realized_mean_p << ','
            << row.frac_edges << ',' << row.stddev << ',' << row.n << ',' << row.N << ',' << row.seed << '\n';
    }
    out.precision(precision);
    out.flags(flags);
}

double concentration_alpha(std::size_t n, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw validation_error("delta must lie in (0, 1), got " + std::to_string(delta));
    }
    return std::sqrt(std::log(static_cast<double>(n) / std::sqrt(2.0 * delta)));
}

ConcentrationStudy run_concentration_check(const ProbabilityMatrix& P, std::span<const std::size_t> N_values,
                                           double delta, std::size_t trials, std::uint64_t seed) {
    const double alpha = concentration_alpha(P.vertex_count(), delta);
    require_sizes(N_values, trials);
    const std::size_t m = P.pair_count();

    ConcentrationStudy study;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < N_values.size(); ++i) {
        const std::size_t N = N_values[i];
        std::vector<double> deviation(trials);
        parallel_for(trials, [&](std::size_t begin, std::size_t end) {
            for (std::size_t t = begin; t < end; ++t) {
                const auto sample = sample_graphs(P, N, derive_seed(seed, i, t));
                const auto counts = edge_frequencies(sample);
                double worst = 0.0;
                for (std::size_t e = 0; e < m; ++e) {
                    const double mean = static_cast<double>(counts[e]) / static_cast<double>(N);
                    worst = std::max(worst, std::abs(mean - P[e]));
                }
                deviation[t] = worst;
            }
        });

        ConcentrationReport report;
        report.n = P.vertex_count();
        report.N = N;
        report.delta = delta;
        report.alpha = alpha;
        report.bound = alpha / std::sqrt(static_cast<double>(N));
        report.trials = trials;
        const auto violations =
            std::count_if(deviation.begin(), deviation.end(), [&](double d) { return d > report.bound; });
        report.violation_rate = static_cast<double>(violations) / static_cast<double>(trials);
        report.bound_satisfied = report.violation_rate <= delta;
        report.max_max_deviation = *std::max_element(deviation.begin(), deviation.end());
        report.median_max_deviation = median_of(std::move(deviation));
        study.reports.push_back(report);
        xs.push_back(static_cast<double>(N));
        ys.push_back(report.median_max_deviation);
    }
    study.loglog_slope = xs.size() >= 2 ? loglog_slope(xs, ys) : std::numeric_limits<double>::quiet_NaN();
    return study;
}

void write_concentration_csv(std::ostream& out, const ConcentrationStudy& study) {
    out << "n,N,delta,alpha,bound,median_max_deviation,max_max_deviation,violation_rate,bound_satisfied,trials,"
           "loglog_slope\n";
    const auto precision = out.precision(10);
    for (const auto& r : study.reports) {
        out << r.n << ',' << r.N << ',' << r.delta << ',' << r.alpha << ',' << r.bound << ','
            << r.median_max_deviation << ',' << r.max_max_deviation << ',' << r.violation_rate << ','
            << (r.bound_satisfied ? "true" : "false") << ',' << r.trials << ',' << study.loglog_slope << '\n';
    }
    out.precision(precision);
}

F2ConcentrationStudy run_f2_concentration(const ProbabilityMatrix& P, const AdjacencyMatrix& B,
                                          std::span<const std::size_t> N_values, std::size_t trials,
                                          std::uint64_t seed) {
    if (B.vertex_count() != P.vertex_count()) {
        throw size_error("graph B and P have different vertex counts");
    }
    if (P.vertex_count() > max_correlation_vertices) {
        throw budget_error("F2 concentration needs pair correlations, capped at n <= " +
                           std::to_string(max_correlation_vertices));
    }
    require_sizes(N_values, trials);
    const double reference = population_f2(B, P);

    F2ConcentrationStudy study;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < N_values.size(); ++i) {
        const std::size_t N = N_values[i];
        std::vector<double> error(trials);
        parallel_for(trials, [&](std::size_t begin, std::size_t end) {
            for (std::size_t t = begin; t < end; ++t) {
                const auto sample = sample_graphs(P, N, derive_seed(seed, i, t));
                const auto stats = sample_statistics(sample, StatisticsDepth::with_correlation);
                error[t] = std::abs(sample_f2(B, stats) - reference);
            }
        });
        F2ConcentrationReport report;
        report.n = P.vertex_count();
        report.N = N;
        report.trials = trials;
        report.population_f2 = reference;
        double sum = 0.0;
        for (double e : error) {
            sum += e;
        }
        report.mean_abs_error = sum / static_cast<double>(trials);
        report.median_abs_error = median_of(std::move(error));
        report.median_relative_error =
            reference > 0.0 ? report.median_abs_error / reference : std::numeric_limits<double>::quiet_NaN();
        study.reports.push_back(report);
        xs.push_back(static_cast<double>(N));
        ys.push_back(report.median_abs_error);
    }
    study.loglog_slope = xs.size() >= 2 ? loglog_slope(xs, ys) : std::numeric_limits<double>::quiet_NaN();
    return study;
}

void write_f2_concentration_csv(std::ostream& out, const F2ConcentrationStudy& study) {
    out << "n,N,population_f2,median_abs_error,mean_abs_error,median_relative_error,trials,loglog_slope\n";
    const auto precision = out.precision(10);
    for (const auto& r : study.reports) {
        out << r.n << ',' << r.N << ',' << r.population_f2 << ',' << r.median_abs_error << ',' << r.mean_abs_error
            << ',' << r.median_relative_error << ',' << r.trials << ',' << study.loglog_slope << '\n';
    }
    out.precision(precision);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw validation_error("slope fit needs at least two (x, y) points");
    }
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    const double k = static_cast<double>(x.size());
    const double mx = sx / k;
    const double my = sy / k;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}
