// Command-line frontend: deterministic, file-based access to sampling,
// learning, scoring, the bound calculators, and the Monte Carlo harnesses.
//
// Exit codes: 0 success, 1 input error, 2 capacity error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bnsl/bounds.hpp"
#include "bnsl/dag_enum.hpp"
#include "bnsl/errors.hpp"
#include "bnsl/experiments.hpp"
#include "bnsl/joint_table.hpp"
#include "bnsl/learner.hpp"
#include "bnsl/sampling.hpp"
#include "bnsl/scoring.hpp"
#include "bnsl/text_format.hpp"

namespace {

using namespace bnsl;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Penalty penalty_option(const std::string& flag) { return Penalty::parse(flag); }

BayesNet load_net(const std::string& path) { return parse_network(read_file(path)); }

LearnMode parse_mode(const std::string& mode) {
    if (mode == "exhaustive") return LearnMode::Exhaustive;
    if (mode == "greedy") return LearnMode::Greedy;
    return LearnMode::Subsampled;
}

struct LearnArgs {
    std::string data_path;
    std::optional<std::string> net_path;
    std::string penalty = "bic";
    std::string mode = "exhaustive";
    std::optional<std::uint64_t> seed;
    int restarts = 3;
    double eps = 0.05;
    double delta = 0.05;
    std::optional<double> m_floor;
    std::string out;
    std::optional<std::string> report_path;
};

int run_learn(const LearnArgs& args) {
    const LearnMode mode = parse_mode(args.mode);
    if (mode != LearnMode::Exhaustive && !args.seed.has_value()) {
        throw InputError("learn: --seed is required for mode '" + args.mode + "'");
    }
    const std::string text = read_file(args.data_path);
    const Dataset data = args.net_path.has_value()
                             ? read_dataset_csv(text, load_net(*args.net_path).schema())
                             : read_dataset_csv(text);
    const Penalty penalty = penalty_option(args.penalty);

    LearnResult result = [&] {
        switch (mode) {
            case LearnMode::Exhaustive: return learn_exhaustive(data, penalty);
            case LearnMode::Greedy:
                return learn_greedy(data, penalty, args.restarts, *args.seed);
            case LearnMode::Subsampled:
            default:
                return learn_subsampled(data, penalty, args.eps, args.delta, *args.seed,
                                        args.m_floor);
        }
    }();

    write_file_atomic(args.out, write_network(result.net, "learned"));
    if (args.report_path.has_value()) {
        write_file_atomic(*args.report_path,
                          ScoreReport::csv_header() + "\n" + result.report.csv_row() + "\n");
    }
    std::cout << "structure " << (result.report.structure.edge_count() == 0
                                      ? std::string("(empty)")
                                      : result.report.structure.edge_list_string())
              << "\nscore " << fmt(result.report.score) << "\ncandidates "
              << result.candidates_evaluated << "\nmode " << learn_mode_name(result.mode) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Bayesian-network structure learning, penalized-likelihood "
                 "scoring, sample-complexity bounds, and Monte Carlo experiment harnesses"};
    app.require_subcommand(1);
    argv = app.ensure_utf8(argv);

    // ---- sample ----
    struct {
        std::string net_path;
        std::int64_t n = 0;
        std::uint64_t seed = 0;
        std::string out;
    } sample_args;
    CLI::App* sample = app.add_subcommand("sample", "Draw rows from a network into a CSV");
    sample->add_option("--net", sample_args.net_path, "network text file")->required();
    sample->add_option("--n", sample_args.n, "number of rows")
        ->required()
        ->check(CLI::NonNegativeNumber);
    sample->add_option("--seed", sample_args.seed, "RNG seed")->required();
    sample->add_option("--out", sample_args.out, "output CSV path")->required();

    // ---- learn ----
    LearnArgs learn_args;
    CLI::App* learn = app.add_subcommand("learn", "Learn a network from a dataset CSV");
    learn->add_option("--data", learn_args.data_path, "dataset CSV")->required();
    learn->add_option("--net", learn_args.net_path,
                      "optional network file supplying the schema for the CSV");
    learn->add_option("--penalty", learn_args.penalty, "const:<c> | bic | poly:<alpha>");
    learn->add_option("--mode", learn_args.mode, "search mode")
        ->check(CLI::IsMember({"exhaustive", "greedy", "subsampled"}));
    learn->add_option("--seed", learn_args.seed, "RNG seed (greedy/subsampled)");
    learn->add_option("--restarts", learn_args.restarts, "greedy restarts")
        ->check(CLI::PositiveNumber);
    learn->add_option("--eps", learn_args.eps, "subsampled: error budget");
    learn->add_option("--delta", learn_args.delta, "subsampled: confidence budget");
    learn->add_option("--m-floor", learn_args.m_floor, "subsampled: skewness lower bound");
    learn->add_option("--out", learn_args.out, "learned network output path")->required();
    learn->add_option("--report", learn_args.report_path, "score report CSV path");

    // ---- score ----
    struct {
        std::string data_path, net_path, penalty = "bic";
        std::optional<std::string> out;
    } score_args;
    CLI::App* score_cmd = app.add_subcommand("score", "Score a structure against a dataset");
    score_cmd->add_option("--data", score_args.data_path, "dataset CSV")->required();
    score_cmd->add_option("--net", score_args.net_path, "network file (structure + schema)")
        ->required();
    score_cmd->add_option("--penalty", score_args.penalty, "const:<c> | bic | poly:<alpha>");
    score_cmd->add_option("--out", score_args.out, "score report CSV path");

    // ---- bounds ----
    CLI::App* bounds = app.add_subcommand("bounds", "Closed-form bound calculators");
    bounds->require_subcommand(1);

    struct {
        std::uint64_t g = 1;
        double eps = 0.1;
        std::string penalty = "bic";
    } ideal_args;
    CLI::App* ideal = bounds->add_subcommand(
        "ideal", "Minimal N with N/psi(N) > g/eps (exact-empirical regime)");
    ideal->add_option("--g", ideal_args.g, "parameter gap over the empty structure")->required();
    ideal->add_option("--eps", ideal_args.eps, "error threshold")->required();
    ideal->add_option("--penalty", ideal_args.penalty, "const:<c> | bic | poly:<alpha>");

    struct {
        std::int64_t n = 1;
        std::uint64_t card_u = 2;
        double eps = 0.0;
    } sanov_args;
    CLI::App* sanov = bounds->add_subcommand("sanov", "Large-deviation bound on empirical error");
    sanov->add_option("--n", sanov_args.n, "sample size")->required();
    sanov->add_option("--card-u", sanov_args.card_u, "joint domain size")->required();
    sanov->add_option("--eps", sanov_args.eps, "entropy-distance threshold")->required();

    struct {
        std::int64_t n = 1;
        std::uint64_t card_u = 2;
        double m = 0.1;
    } skew_args;
    CLI::App* skew = bounds->add_subcommand("skew", "Bound on skewed-sample probability");
    skew->add_option("--n", skew_args.n, "sample size")->required();
    skew->add_option("--card-u", skew_args.card_u, "joint domain size")->required();
    skew->add_option("--m", skew_args.m, "target skewness")->required();

    struct {
        double a = 0, b = 0, c = 0, m = 0;
    } tri_args;
    CLI::App* tri = bounds->add_subcommand("triangle", "Entropy-distance propagation bound");
    tri->add_option("--a", tri_args.a)->required();
    tri->add_option("--b", tri_args.b)->required();
    tri->add_option("--c", tri_args.c)->required();
    tri->add_option("--m", tri_args.m)->required();

    struct {
        double y = 2.0;
    } finv_args;
    CLI::App* finv = bounds->add_subcommand("finv", "Inverse of x/log2(x), branch x >= 4");
    finv->add_option("--y", finv_args.y)->required();

    struct {
        double a = 0, b = 0, m = 0;
        std::int64_t n = 1;
        int n_vars = 1;
        std::uint64_t card_u = 2, g = 0;
        std::string penalty = "bic";
        std::optional<std::string> out;
    } guar_args;
    CLI::App* guar =
        bounds->add_subcommand("guarantee", "(epsilon, delta) guarantee for given (a, b, N)");
    guar->add_option("--a", guar_args.a)->required();
    guar->add_option("--b", guar_args.b)->required();
    guar->add_option("--n", guar_args.n)->required();
    guar->add_option("--n-vars", guar_args.n_vars)->required();
    guar->add_option("--card-u", guar_args.card_u)->required();
    guar->add_option("--m", guar_args.m)->required();
    guar->add_option("--g", guar_args.g)->required();
    guar->add_option("--penalty", guar_args.penalty);
    guar->add_option("--out", guar_args.out, "CSV output path");

    struct {
        double eps = 0.1, delta = 0.1, m = 0;
        int n_vars = 1;
        std::uint64_t card_u = 2, g = 0;
        std::string penalty = "bic";
        std::int64_t cap = 1'000'000'000'000ll;
        std::optional<std::string> out;
    } sc_args;
    CLI::App* sc = bounds->add_subcommand("sample-complexity",
                                          "Minimal N meeting an (epsilon, delta) target");
    sc->add_option("--eps", sc_args.eps)->required();
    sc->add_option("--delta", sc_args.delta)->required();
    sc->add_option("--n-vars", sc_args.n_vars)->required();
    sc->add_option("--card-u", sc_args.card_u)->required();
    sc->add_option("--m", sc_args.m)->required();
    sc->add_option("--g", sc_args.g)->required();
    sc->add_option("--penalty", sc_args.penalty);
    sc->add_option("--cap", sc_args.cap, "search cap on N");
    sc->add_option("--out", sc_args.out, "CSV output path");

    struct {
        double eps = 0.1, delta = 0.1, m = 0;
        int n_vars = 1;
        std::uint64_t card_u = 2, g = 0;
        std::string penalty = "bic";
    } asym_args;
    CLI::App* asym =
        bounds->add_subcommand("asymptotic", "Constant-free asymptotic reference magnitude");
    asym->add_option("--eps", asym_args.eps)->required();
    asym->add_option("--delta", asym_args.delta)->required();
    asym->add_option("--n-vars", asym_args.n_vars)->required();
    asym->add_option("--card-u", asym_args.card_u)->required();
    asym->add_option("--m", asym_args.m)->required();
    asym->add_option("--g", asym_args.g)->required();
    asym->add_option("--penalty", asym_args.penalty);

    // ---- curve ----
    struct {
        std::string net_path, penalty = "bic", mode = "exhaustive";
        std::string n_grid;
        std::int64_t trials = 10;
        std::uint64_t seed = 0;
        int restarts = 3;
        double eps = 0.05, delta = 0.05;
        std::string out;
    } curve_args;
    CLI::App* curve = app.add_subcommand("curve", "Learning-curve Monte Carlo (CSV)");
    curve->add_option("--net", curve_args.net_path, "target network file")->required();
    curve->add_option("--penalty", curve_args.penalty);
    curve->add_option("--n-grid", curve_args.n_grid, "comma-separated sample sizes")->required();
    curve->add_option("--trials", curve_args.trials)->check(CLI::PositiveNumber);
    curve->add_option("--seed", curve_args.seed)->required();
    curve->add_option("--mode", curve_args.mode)
        ->check(CLI::IsMember({"exhaustive", "greedy", "subsampled"}));
    curve->add_option("--restarts", curve_args.restarts)->check(CLI::PositiveNumber);
    curve->add_option("--eps", curve_args.eps);
    curve->add_option("--delta", curve_args.delta);
    curve->add_option("--out", curve_args.out, "output CSV path")->required();

    // ---- sanov-mc ----
    struct {
        std::string net_path;
        std::int64_t n = 0, trials = 0;
        double eps = 0.0;
        std::uint64_t seed = 0;
        std::string out;
    } smc_args;
    CLI::App* smc = app.add_subcommand("sanov-mc", "Empirical check of the large-deviation bound");
    smc->add_option("--net", smc_args.net_path, "target network file")->required();
    smc->add_option("--n", smc_args.n)->required()->check(CLI::PositiveNumber);
    smc->add_option("--eps", smc_args.eps)->required();
    smc->add_option("--trials", smc_args.trials)->required()->check(CLI::PositiveNumber);
    smc->add_option("--seed", smc_args.seed)->required();
    smc->add_option("--out", smc_args.out, "output CSV path")->required();

    // ---- minimality ----
    struct {
        std::string net_path, penalty = "bic";
        std::int64_t n = 0, trials = 0;
        std::uint64_t seed = 0;
        std::string out;
    } min_args;
    CLI::App* minim =
        app.add_subcommand("minimality", "Histogram of learned |G| against the target's");
    minim->add_option("--net", min_args.net_path, "target network file")->required();
    minim->add_option("--penalty", min_args.penalty);
    minim->add_option("--n", min_args.n)->required()->check(CLI::PositiveNumber);
    minim->add_option("--trials", min_args.trials)->required()->check(CLI::PositiveNumber);
    minim->add_option("--seed", min_args.seed)->required();
    minim->add_option("--out", min_args.out, "output CSV path")->required();

    // ---- enumerate-dags ----
    struct {
        int n = 1;
        int card = 2;
        std::optional<std::string> out;
    } enum_args;
    CLI::App* enumd = app.add_subcommand("enumerate-dags", "All labeled DAGs in canonical order");
    enumd->add_option("--n", enum_args.n, "variable count")->required()->check(CLI::PositiveNumber);
    enumd->add_option("--card", enum_args.card, "shared cardinality")->check(CLI::Range(2, 64));
    enumd->add_option("--out", enum_args.out, "edge-list CSV path");

    try {
        app.parse(argc, argv);

        if (sample->parsed()) {
            const BayesNet net = load_net(sample_args.net_path);
            const Dataset data = ancestral_sample(net, sample_args.n, sample_args.seed);
            write_file_atomic(sample_args.out, write_dataset_csv(data));
            std::cout << "wrote " << data.n_rows() << " rows to " << sample_args.out << "\n";
            return 0;
        }
        if (learn->parsed()) {
            return run_learn(learn_args);
        }
        if (score_cmd->parsed()) {
            const BayesNet net = load_net(score_args.net_path);
            const Dataset data = read_dataset_csv(read_file(score_args.data_path), net.schema());
            const ScoreReport report =
                bnsl::score(net.structure(), data, penalty_option(score_args.penalty));
            const std::string csv = ScoreReport::csv_header() + "\n" + report.csv_row() + "\n";
            if (score_args.out.has_value()) write_file_atomic(*score_args.out, csv);
            std::cout << csv;
            return 0;
        }
        if (ideal->parsed()) {
            std::cout << ideal_sample_size(ideal_args.g, ideal_args.eps,
                                           penalty_option(ideal_args.penalty))
                      << "\n";
            return 0;
        }
        if (sanov->parsed()) {
            std::cout << fmt(sanov_bound(sanov_args.n, sanov_args.card_u, sanov_args.eps)) << "\n";
            return 0;
        }
        if (skew->parsed()) {
            std::cout << fmt(skew_set_bound(skew_args.n, skew_args.card_u, skew_args.m)) << "\n";
            return 0;
        }
        if (tri->parsed()) {
            const auto e = entropy_triangle_bound(tri_args.a, tri_args.b, tri_args.c, tri_args.m);
            std::cout << (e.has_value() ? fmt(*e) : std::string("invalid")) << "\n";
            return 0;
        }
        if (finv->parsed()) {
            std::cout << fmt(inverse_x_over_log2x(finv_args.y)) << "\n";
            return 0;
        }
        if (guar->parsed()) {
            const BoundProblem prob{guar_args.n_vars, guar_args.card_u, guar_args.m, guar_args.g,
                                    penalty_option(guar_args.penalty)};
            const GuaranteeReport r =
                evaluate_guarantee(guar_args.a, guar_args.b, guar_args.n, prob);
            if (guar_args.out.has_value()) {
                write_file_atomic(*guar_args.out,
                                  GuaranteeReport::csv_header() + "\n" + r.csv_row() + "\n");
            }
            std::cout << "epsilon " << fmt(r.epsilon) << "\ndelta " << fmt(r.delta) << "\nvalid "
                      << (r.valid ? "yes" : "no") << "\n";
            for (const std::string& v : r.violated_conditions) {
                std::cout << "violated " << v << "\n";
            }
            return 0;
        }
        if (sc->parsed()) {
            const BoundProblem prob{sc_args.n_vars, sc_args.card_u, sc_args.m, sc_args.g,
                                    penalty_option(sc_args.penalty)};
            SampleComplexityOptions opts;
            opts.n_cap = sc_args.cap;
            const SampleComplexityResult r =
                sample_complexity(sc_args.eps, sc_args.delta, prob, opts);
            if (sc_args.out.has_value()) {
                write_file_atomic(*sc_args.out,
                                  "feasible,n,a,b\n" + std::string(r.feasible ? "1" : "0") + "," +
                                      std::to_string(r.n_samples) + "," + fmt(r.a) + "," +
                                      fmt(r.b) + "\n");
            }
            if (r.feasible) {
                std::cout << "n " << r.n_samples << "\na " << fmt(r.a) << "\nb " << fmt(r.b)
                          << "\n";
            } else {
                std::cout << "infeasible\n";
            }
            return 0;
        }
        if (asym->parsed()) {
            const BoundProblem prob{asym_args.n_vars, asym_args.card_u, asym_args.m, asym_args.g,
                                    penalty_option(asym_args.penalty)};
            std::cout << fmt(asymptotic_reference(asym_args.eps, asym_args.delta, prob)) << "\n";
            return 0;
        }
        if (curve->parsed()) {
            ExperimentConfig cfg{load_net(curve_args.net_path),
                                 {},
                                 curve_args.trials,
                                 penalty_option(curve_args.penalty),
                                 curve_args.seed,
                                 parse_mode(curve_args.mode)};
            cfg.restarts = curve_args.restarts;
            cfg.eps = curve_args.eps;
            cfg.delta = curve_args.delta;
            std::istringstream grid(curve_args.n_grid);
            std::string item;
            while (std::getline(grid, item, ',')) {
                try {
                    cfg.n_grid.push_back(std::stoll(item));
                } catch (const std::exception&) {
                    throw InputError("curve: malformed --n-grid entry '" + item + "'");
                }
            }
            write_file_atomic(curve_args.out, curve_csv(learning_curve(cfg)));
            std::cout << "wrote " << cfg.n_grid.size() << " grid points to " << curve_args.out
                      << "\n";
            return 0;
        }
        if (smc->parsed()) {
            const SanovMcResult r = sanov_mc(load_net(smc_args.net_path), smc_args.n,
                                             smc_args.eps, smc_args.trials, smc_args.seed);
            write_file_atomic(smc_args.out, sanov_csv({r}));
            std::cout << "empirical " << fmt(r.empirical_freq) << "\nbound "
                      << fmt(r.analytic_bound) << "\n";
            return 0;
        }
        if (minim->parsed()) {
            const MinimalityHistogram h =
                minimality_probe(load_net(min_args.net_path), penalty_option(min_args.penalty),
                                 min_args.n, min_args.trials, min_args.seed);
            write_file_atomic(min_args.out, minimality_csv({h}));
            std::cout << "smaller " << h.smaller << "\nequal " << h.equal << "\nlarger "
                      << h.larger << "\n";
            return 0;
        }
        if (enumd->parsed()) {
            const std::vector<Structure> dags =
                enumerate_dags(uniform_schema(enum_args.n, enum_args.card));
            if (enum_args.out.has_value()) {
                std::string csv = "index,edges\n";
                for (std::size_t k = 0; k < dags.size(); ++k) {
                    csv += std::to_string(k) + "," + dags[k].edge_list_string() + "\n";
                }
                write_file_atomic(*enum_args.out, csv);
            }
            std::cout << dags.size() << "\n";
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
