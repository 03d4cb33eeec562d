#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bnsl/bayesnet.hpp"
#include "bnsl/learner.hpp"
#include "bnsl/penalty.hpp"

namespace bnsl {

struct CurvePoint {
    std::int64_t n_samples;
    std::int64_t trials;
    double mean_kl;       // mean D(target || learned), bits
    double std_kl;        // sample standard deviation (0 when trials == 1)
    double scaled_error;  // mean_kl * N / log2(N)
};

struct ExperimentConfig {
    BayesNet target;
    std::vector<std::int64_t> n_grid;  // strictly increasing
    std::int64_t trials = 10;
    Penalty penalty = Penalty::half_log();
    std::uint64_t seed = 0;
    LearnMode learner_mode = LearnMode::Exhaustive;
    int restarts = 3;       // greedy mode
    double eps = 0.05;      // subsampled mode
    double delta = 0.05;    // subsampled mode
};

/**
 * For each N in the grid, runs `trials` independent rounds on a child RNG
 * stream keyed by (N, trial): sample N rows from the target, learn, and
 * measure the entropy distance from the target to the learned
 * distribution. Identical configs (including seed) produce bit-identical
 * results.
 */
std::vector<CurvePoint> learning_curve(const ExperimentConfig& cfg);

struct SanovMcResult {
    std::int64_t n_samples;
    double eps;
    std::int64_t trials;
    double empirical_freq;  // fraction of trials with D(empirical||target) > eps
    double analytic_bound;  // min(1, sanov_bound)
};

SanovMcResult sanov_mc(const BayesNet& target, std::int64_t n_samples, double eps,
                       std::int64_t trials, std::uint64_t seed);

struct MinimalityHistogram {
    std::int64_t n_samples;
    std::int64_t trials;
    std::int64_t smaller;  // learned |G| < |G*|
    std::int64_t equal;
    std::int64_t larger;
};

/**
 * Repeatedly samples and learns (exhaustive), comparing the learned
 * parameter count against the target structure's.
 */
MinimalityHistogram minimality_probe(const BayesNet& target, const Penalty& p,
                                     std::int64_t n_samples, std::int64_t trials,
                                     std::uint64_t seed);

// CSV emitters; floats carry 12 significant digits.
std::string curve_csv(const std::vector<CurvePoint>& points);
std::string sanov_csv(const std::vector<SanovMcResult>& results);
std::string minimality_csv(const std::vector<MinimalityHistogram>& histograms);

// Compensated (Neumaier) accumulator for order-robust means. Saturates
// cleanly on infinities instead of producing NaN compensation terms.
class CompensatedSum {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (!std::isfinite(t)) {
            sum_ = t;
            compensation_ = 0.0;
            return;
        }
        if (std::abs(sum_) >= std::abs(value)) {
            compensation_ += (sum_ - t) + value;
        } else {
            compensation_ += (value - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace bnsl
