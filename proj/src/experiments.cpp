#include "bnsl/experiments.hpp"

#include <algorithm>
#include <cstdio>

#include "bnsl/bounds.hpp"
#include "bnsl/errors.hpp"
#include "bnsl/joint_table.hpp"
#include "bnsl/rng.hpp"
#include "bnsl/sampling.hpp"

namespace bnsl {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

LearnResult run_learner(const ExperimentConfig& cfg, const Dataset& data,
                        std::uint64_t learner_seed) {
    switch (cfg.learner_mode) {
        case LearnMode::Exhaustive: return learn_exhaustive(data, cfg.penalty);
        case LearnMode::Greedy: return learn_greedy(data, cfg.penalty, cfg.restarts, learner_seed);
        case LearnMode::Subsampled:
        default:
            return learn_subsampled(data, cfg.penalty, cfg.eps, cfg.delta, learner_seed);
    }
}

}  // namespace

std::vector<CurvePoint> learning_curve(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw InputError("learning_curve: trials must be >= 1");
    if (cfg.n_grid.empty()) throw InputError("learning_curve: empty sample-size grid");
    for (std::size_t k = 0; k < cfg.n_grid.size(); ++k) {
        if (cfg.n_grid[k] < 2) throw InputError("learning_curve: grid sizes must be >= 2");
        if (k > 0 && cfg.n_grid[k] <= cfg.n_grid[k - 1]) {
            throw InputError("learning_curve: grid must be strictly increasing");
        }
    }

    const JointTable target_table = net_to_table(cfg.target);
    const Rng root(cfg.seed);

    std::vector<CurvePoint> points;
    points.reserve(cfg.n_grid.size());
    std::vector<double> kls(static_cast<std::size_t>(cfg.trials));
    for (const std::int64_t n : cfg.n_grid) {
        const Rng n_stream = root.child(static_cast<std::uint64_t>(n));
        CompensatedSum mean_acc;
        for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
            Rng stream = n_stream.child(static_cast<std::uint64_t>(trial));
            const std::uint64_t sample_seed = stream.next_u64();
            const std::uint64_t learner_seed = stream.next_u64();
            const Dataset data = ancestral_sample(cfg.target, n, sample_seed);
            const LearnResult result = run_learner(cfg, data, learner_seed);
            const double kl = entropy_distance(target_table, net_to_table(result.net));
            kls[static_cast<std::size_t>(trial)] = kl;
            mean_acc.add(kl);
        }
        const double mean = mean_acc.value() / static_cast<double>(cfg.trials);
        double std_kl = 0.0;
        if (cfg.trials > 1) {
            if (!std::isfinite(mean)) {
                // An infinite distance (a fitted structure assigning zero
                // probability where the target has mass) dominates the
                // trial set; the spread is unbounded too.
                std_kl = mean;
            } else {
                CompensatedSum var_acc;
                for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
                    const double d = kls[static_cast<std::size_t>(trial)] - mean;
                    var_acc.add(d * d);
                }
                std_kl = std::sqrt(var_acc.value() / static_cast<double>(cfg.trials - 1));
            }
        }
        const double scaled =
            mean * static_cast<double>(n) / std::log2(static_cast<double>(n));
        points.push_back(CurvePoint{n, cfg.trials, mean, std_kl, scaled});
    }
    return points;
}

SanovMcResult sanov_mc(const BayesNet& target, std::int64_t n_samples, double eps,
                       std::int64_t trials, std::uint64_t seed) {
    if (trials < 1) throw InputError("sanov_mc: trials must be >= 1");
    if (n_samples < 1) throw InputError("sanov_mc: n_samples must be >= 1");
    const JointTable target_table = net_to_table(target);
    const Rng root(seed);

    std::int64_t exceedances = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Rng stream = root.child(static_cast<std::uint64_t>(trial));
        const Dataset data = ancestral_sample(target, n_samples, stream);
        if (entropy_distance(empirical(data), target_table) > eps) ++exceedances;
    }
    const double bound = sanov_bound(n_samples, target.schema().joint_size(), eps);
    return SanovMcResult{n_samples, eps, trials,
                         static_cast<double>(exceedances) / static_cast<double>(trials),
                         std::min(1.0, bound)};
}

MinimalityHistogram minimality_probe(const BayesNet& target, const Penalty& p,
                                     std::int64_t n_samples, std::int64_t trials,
                                     std::uint64_t seed) {
    if (trials < 1) throw InputError("minimality_probe: trials must be >= 1");
    const std::uint64_t target_params = target.structure().param_count();
    const Rng root(seed);

    MinimalityHistogram hist{n_samples, trials, 0, 0, 0};
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Rng stream = root.child(static_cast<std::uint64_t>(trial));
        const Dataset data = ancestral_sample(target, n_samples, stream);
        const LearnResult result = learn_exhaustive(data, p);
        const std::uint64_t learned = result.report.param_count;
        if (learned < target_params) {
            ++hist.smaller;
        } else if (learned == target_params) {
            ++hist.equal;
        } else {
            ++hist.larger;
        }
    }
    return hist;
}

std::string curve_csv(const std::vector<CurvePoint>& points) {
    std::string out = "n,trials,mean_kl,std_kl,scaled_error\n";
    for (const CurvePoint& p : points) {
        out += std::to_string(p.n_samples) + "," + std::to_string(p.trials) + "," +
               format_double(p.mean_kl) + "," + format_double(p.std_kl) + "," +
               format_double(p.scaled_error) + "\n";
    }
    return out;
}

std::string sanov_csv(const std::vector<SanovMcResult>& results) {
    std::string out = "n,eps,trials,empirical_freq,analytic_bound\n";
    for (const SanovMcResult& r : results) {
        out += std::to_string(r.n_samples) + "," + format_double(r.eps) + "," +
               std::to_string(r.trials) + "," + format_double(r.empirical_freq) + "," +
               format_double(r.analytic_bound) + "\n";
    }
    return out;
}

std::string minimality_csv(const std::vector<MinimalityHistogram>& histograms) {
    std::string out = "n,trials,smaller,equal,larger\n";
    for (const MinimalityHistogram& h : histograms) {
        out += std::to_string(h.n_samples) + "," + std::to_string(h.trials) + "," +
               std::to_string(h.smaller) + "," + std::to_string(h.equal) + "," +
               std::to_string(h.larger) + "\n";
    }
    return out;
}

}  // namespace bnsl
