// frechet: command-line front end for the Frechet mean/median library.
//
//   frechet sweep         beta-random P sweep of the sample mean edge fraction (CSV)
//   frechet concentration deviation of sample means or sample F2 against N (CSV)
//   frechet mean|median   sample Frechet mean/median of graph files (JSON)
//   frechet oracle        exhaustive minimizers for a P or a graph sample (JSON)
//   frechet sample        draw and persist a graph sample
//
// Exit codes: 0 success, 2 validation error, 3 budget or guard error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frechet/errors.hpp"
#include "frechet/estimators.hpp"
#include "frechet/experiments.hpp"
#include "frechet/gnp.hpp"
#include "frechet/graph.hpp"
#include "frechet/oracle.hpp"
#include "frechet/rng.hpp"

namespace fs = std::filesystem;
using namespace frechet;

namespace {

constexpr int exit_validation = 2;
constexpr int exit_budget = 3;
constexpr const char* seed_env = "FRECHET_SEED";

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw validation_error("cannot open " + path);
    }
    return in;
}

// Output goes to `path`, or stdout when path is empty or "-".
template <class Writer>
void with_output(const std::string& path, Writer&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw validation_error("cannot write " + path);
    }
    write(out);
}

// Graph files in a directory are read in lexicographic path order.
std::vector<std::string> expand_graph_paths(const std::vector<std::string>& inputs) {
    std::vector<std::string> paths;
    for (const auto& input : inputs) {
        if (fs::is_directory(input)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(input)) {
                if (entry.is_regular_file() && entry.path().filename().string().rfind("graph_", 0) == 0) {
                    found.push_back(entry.path().string());
                }
            }
            std::sort(found.begin(), found.end());
            paths.insert(paths.end(), found.begin(), found.end());
        } else {
            paths.push_back(input);
        }
    }
    if (paths.empty()) {
        throw validation_error("no graph files given");
    }
    return paths;
}

GraphSample load_sample(const std::vector<std::string>& inputs) {
    std::vector<AdjacencyMatrix> graphs;
    for (const auto& path : expand_graph_paths(inputs)) {
        auto in = open_input(path);
        graphs.push_back(read_graph(in));
    }
    return GraphSample(std::move(graphs));
}

ProbabilityMatrix load_probability(const std::string& path) {
    auto in = open_input(path);
    return read_probability_csv(in);
}

// Flat "key = value" config file. Values may be comma- or space-separated lists.
// Keys become long flags; flags already present on the command line win,
// whether given in long or short form.
std::vector<std::string> expand_config(const std::vector<std::string>& args, const CLI::App& app) {
    const CLI::App* sub = nullptr;
    if (!args.empty()) {
        try {
            sub = app.get_subcommand(args.front());
        } catch (const CLI::OptionNotFound&) {
        }
    }
    std::vector<std::string> out;
    std::optional<std::string> config_path;
    std::set<std::string> explicit_flags;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[++i];
            continue;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            continue;
        }
        if (args[i].size() > 1 && args[i][0] == '-') {
            const bool is_long = args[i].rfind("--", 0) == 0;
            const std::string name = is_long ? args[i].substr(0, args[i].find('=')) : args[i].substr(0, 2);
            const CLI::Option* opt = sub == nullptr ? nullptr : sub->get_option_no_throw(name);
            if (opt != nullptr && !opt->get_lnames().empty()) {
                explicit_flags.insert("--" + opt->get_lnames().front());
            } else {
                explicit_flags.insert(name);
            }
        }
        out.push_back(args[i]);
    }
    if (!config_path) {
        return out;
    }
    auto in = open_input(*config_path);
    std::vector<std::string> injected;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw validation_error("config line " + std::to_string(line_no) + ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        const std::string flag = "--" + key;
        if (key.empty() || explicit_flags.count(flag) != 0) {
            continue;
        }
        if (value == "true" || value == "false") {
            if (value == "true") {
                injected.push_back(flag);
            }
            continue;
        }
        std::replace(value.begin(), value.end(), ',', ' ');
        std::istringstream tokens(value);
        injected.push_back(flag);
        for (std::string token; tokens >> token;) {
            injected.push_back(token);
        }
    }
    // Insert right after the subcommand name so the options bind to it.
    const auto pos = out.empty() ? out.end() : out.begin() + 1;
    out.insert(pos, injected.begin(), injected.end());
    return out;
}

struct SweepArgs {
    SweepConfig cfg;
    std::string normalization = "simple";
    bool full = false;
    std::string output;
};

struct ConcentrationArgs {
    std::size_t n = 16;
    std::vector<std::size_t> sample_sizes = {100, 400, 1600, 6400};
    double delta = 0.1;
    std::size_t trials = 500;
    std::uint64_t seed = 20220101;
    double nu = 2.0;
    double omega = 2.0;
    std::string prob_matrix;
    std::string graph;
    std::string mode = "edge-mean";
    std::string output;
};

struct EstimateArgs {
    std::vector<std::string> inputs;
    std::string output;
};

struct OracleArgs {
    std::string prob_matrix;
    std::vector<std::string> inputs;
    int q = 2;
    std::string output;
};

struct SampleArgs {
    std::string prob_matrix;
    std::size_t n = 16;
    double nu = 2.0;
    double omega = 2.0;
    std::size_t N = 101;
    std::uint64_t seed = 20220101;
    std::string out_dir;
};

ProbabilityMatrix probability_from(const std::string& path, std::size_t n, double nu, double omega,
                                   std::uint64_t seed) {
    if (!path.empty()) {
        return load_probability(path);
    }
    return random_probability_matrix(n, BetaConfig{nu, omega}, derive_seed(seed, 0xBE7A));
}

void run_sweep(SweepArgs& args) {
    SweepConfig cfg = args.cfg;
    if (args.full) {
        const auto full = full_scale_sweep_config();
        cfg.n = full.n;
        cfg.N = full.N;
    }
    cfg.normalization = parse_normalization(args.normalization);
    if (cfg.N % 2 == 0) {
        std::cerr << "note: even N allows exact majority ties; odd N avoids them\n";
    }
    const auto rows = run_threshold_sweep(cfg);
    with_output(args.output, [&](std::ostream& out) { write_sweep_csv(out, rows); });
}

void run_concentration(const ConcentrationArgs& args) {
    const auto P = probability_from(args.prob_matrix, args.n, args.nu, args.omega, args.seed);
    if (args.mode == "edge-mean") {
        const auto study = run_concentration_check(P, args.sample_sizes, args.delta, args.trials, args.seed);
        with_output(args.output, [&](std::ostream& out) { write_concentration_csv(out, study); });
    } else if (args.mode == "f2") {
        AdjacencyMatrix B = threshold_graph(P, 0.5);
        if (!args.graph.empty()) {
            auto in = open_input(args.graph);
            B = read_graph(in);
        }
        const auto study = run_f2_concentration(P, B, args.sample_sizes, args.trials, args.seed);
        with_output(args.output, [&](std::ostream& out) { write_f2_concentration_csv(out, study); });
    } else {
        throw validation_error("--mode must be edge-mean or f2");
    }
}

void run_estimate(const EstimateArgs& args, bool mean) {
    const auto sample = load_sample(args.inputs);
    const auto estimate = mean ? sample_frechet_mean(sample) : sample_frechet_median(sample);
    with_output(args.output, [&](std::ostream& out) { out << to_json(estimate).dump(2) << '\n'; });
}

void run_oracle(const OracleArgs& args) {
    if (args.prob_matrix.empty() == args.inputs.empty()) {
        throw validation_error("oracle needs either --prob-matrix or graph files, not both");
    }
    const auto result = args.prob_matrix.empty() ? oracle_sample(load_sample(args.inputs), args.q)
                                                 : oracle_population(load_probability(args.prob_matrix), args.q);
    with_output(args.output, [&](std::ostream& out) { out << to_json(result).dump(2) << '\n'; });
}

void run_sample(const SampleArgs& args) {
    const auto P = probability_from(args.prob_matrix, args.n, args.nu, args.omega, args.seed);
    const auto sample = sample_graphs(P, args.N, args.seed);
    fs::create_directories(args.out_dir);
    {
        std::ofstream out(fs::path(args.out_dir) / "P.csv");
        write_probability_csv(out, P);
    }
    for (std::size_t k = 0; k < sample.size(); ++k) {
        std::ostringstream name;
        name << "graph_" << std::setw(6) << std::setfill('0') << k << ".txt";
        std::ofstream out(fs::path(args.out_dir) / name.str());
        write_graph(out, sample[k]);
        if (!out) {
            throw validation_error("failed writing " + name.str());
        }
    }
    const nlohmann::json summary = {
        {"n", P.vertex_count()}, {"N", sample.size()}, {"seed", args.seed}, {"directory", args.out_dir}};
    std::cout << summary.dump(2) << '\n';
}

std::uint64_t env_seed(std::uint64_t fallback) {
    if (const char* text = std::getenv(seed_env)) {
        try {
            return std::stoull(text);
        } catch (const std::exception&) {
            throw validation_error(std::string(seed_env) + " must be an unsigned integer");
        }
    }
    return fallback;
}

}

int main(int argc, char** argv) {
    CLI::App app{"Frechet mean and median graphs of inhomogeneous Erdos-Renyi random graphs"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::vector<std::string> raw(argv + 1, argv + argc);

    SweepArgs sweep;
    ConcentrationArgs conc;
    EstimateArgs mean_args;
    EstimateArgs median_args;
    OracleArgs oracle;
    SampleArgs sample;

    try {
        const std::uint64_t default_seed = env_seed(sweep.cfg.seed);
        sweep.cfg.seed = conc.seed = sample.seed = default_seed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }

    auto* cmd_sweep = app.add_subcommand("sweep", "Sample Frechet mean edge fraction over a sweep of beta-random P");
    cmd_sweep->add_option("-n,--vertices", sweep.cfg.n, "Vertex count")->capture_default_str();
    cmd_sweep->add_option("-N,--sample-size", sweep.cfg.N, "Graphs per sample")->capture_default_str();
    cmd_sweep->add_option("--nu", sweep.cfg.nu_values, "Beta shape nu values")->delimiter(',')->capture_default_str();
    cmd_sweep->add_option("--total", sweep.cfg.total, "Constant nu + omega")->capture_default_str();
    cmd_sweep->add_option("--realizations", sweep.cfg.realizations, "Independent repetitions per nu")
        ->capture_default_str();
    cmd_sweep->add_option("--seed", sweep.cfg.seed, "Master seed (default from FRECHET_SEED)")->capture_default_str();
    cmd_sweep->add_option("--normalization", sweep.normalization, "Edge fraction denominator")
        ->check(CLI::IsMember({"simple", "with-diagonal"}))
        ->capture_default_str();
    cmd_sweep->add_flag("--full", sweep.full, "Use n = 512, N = 1000");
    cmd_sweep->add_option("-o,--output", sweep.output, "CSV output path (default stdout)");
    cmd_sweep->add_option("--config", "Flat key = value config file");

    auto* cmd_conc = app.add_subcommand("concentration", "Deviation of sample statistics against sample size");
    cmd_conc->add_option("-n,--vertices", conc.n, "Vertex count when P is drawn at random")->capture_default_str();
    cmd_conc->add_option("--sample-sizes", conc.sample_sizes, "Sample sizes N")->delimiter(',')->capture_default_str();
    cmd_conc->add_option("--delta", conc.delta, "Failure probability")->capture_default_str();
    cmd_conc->add_option("--trials", conc.trials, "Repetitions per N")->capture_default_str();
    cmd_conc->add_option("--seed", conc.seed, "Master seed (default from FRECHET_SEED)")->capture_default_str();
    cmd_conc->add_option("--nu", conc.nu, "Beta shape nu for a random P")->capture_default_str();
    cmd_conc->add_option("--omega", conc.omega, "Beta shape omega for a random P")->capture_default_str();
    cmd_conc->add_option("--prob-matrix", conc.prob_matrix, "Probability matrix CSV (overrides --vertices/--nu)");
    cmd_conc->add_option("--graph", conc.graph, "Graph B for --mode f2 (default: P thresholded at 1/2)");
    cmd_conc->add_option("--mode", conc.mode, "edge-mean or f2")
        ->check(CLI::IsMember({"edge-mean", "f2"}))
        ->capture_default_str();
    cmd_conc->add_option("-o,--output", conc.output, "CSV output path (default stdout)");
    cmd_conc->add_option("--config", "Flat key = value config file");

    auto* cmd_mean = app.add_subcommand("mean", "Sample Frechet mean of graph files (strict majority)");
    cmd_mean->add_option("inputs", mean_args.inputs, "Graph files or directories")->required();
    cmd_mean->add_option("-o,--output", mean_args.output, "JSON output path (default stdout)");

    auto* cmd_median = app.add_subcommand("median", "Sample Frechet median of graph files (majority, ties kept)");
    cmd_median->add_option("inputs", median_args.inputs, "Graph files or directories")->required();
    cmd_median->add_option("-o,--output", median_args.output, "JSON output path (default stdout)");

    auto* cmd_oracle = app.add_subcommand("oracle", "Exhaustive Frechet minimizers for small n");
    cmd_oracle->add_option("--prob-matrix", oracle.prob_matrix, "Population oracle for this P (n <= 5)");
    cmd_oracle->add_option("inputs", oracle.inputs, "Sample oracle over these graph files (n <= 7)");
    cmd_oracle->add_option("-q,--exponent", oracle.q, "1 for the median, 2 for the mean")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    cmd_oracle->add_option("-o,--output", oracle.output, "JSON output path (default stdout)");

    auto* cmd_sample = app.add_subcommand("sample", "Draw a graph sample and write it to a directory");
    cmd_sample->add_option("--prob-matrix", sample.prob_matrix, "Probability matrix CSV");
    cmd_sample->add_option("-n,--vertices", sample.n, "Vertex count when P is drawn at random")->capture_default_str();
    cmd_sample->add_option("--nu", sample.nu, "Beta shape nu for a random P")->capture_default_str();
    cmd_sample->add_option("--omega", sample.omega, "Beta shape omega for a random P")->capture_default_str();
    cmd_sample->add_option("-N,--sample-size", sample.N, "Graphs to draw")->capture_default_str();
    cmd_sample->add_option("--seed", sample.seed, "Seed (default from FRECHET_SEED)")->capture_default_str();
    cmd_sample->add_option("--out-dir", sample.out_dir, "Output directory")->required();

    try {
        raw = expand_config(raw, app);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
    std::reverse(raw.begin(), raw.end());
    try {
        app.parse(raw);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_validation;
    }

    try {
        if (cmd_sweep->parsed()) {
            run_sweep(sweep);
        } else if (cmd_conc->parsed()) {
            run_concentration(conc);
        } else if (cmd_mean->parsed()) {
            run_estimate(mean_args, true);
        } else if (cmd_median->parsed()) {
            run_estimate(median_args, false);
        } else if (cmd_oracle->parsed()) {
            run_oracle(oracle);
        } else if (cmd_sample->parsed()) {
            run_sample(sample);
        }
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
    return 0;
}
