#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bnsl/bayesnet.hpp"
#include "bnsl/dag_enum.hpp"
#include "bnsl/dataset.hpp"
#include "bnsl/scoring.hpp"

namespace bnsl {

enum class LearnMode { Exhaustive, Greedy, Subsampled };

const char* learn_mode_name(LearnMode mode);

struct LearnResult {
    BayesNet net;           // learned structure with full-data ML parameters
    ScoreReport report;     // the score that was maximized
    std::int64_t candidates_evaluated;
    LearnMode mode;
    // Subsampled mode only: rows used per family of the learned structure,
    // in variable order.
    std::vector<std::int64_t> per_family_sample_sizes;
};

/**
 * Argmax of the penalized score over every labeled DAG. Ties are broken by
 * smaller parameter count, then by earlier canonical enumeration order.
 */
LearnResult learn_exhaustive(const Dataset& data, const Penalty& p,
                             int enum_limit = kDefaultEnumerationLimit);

/**
 * Hill-climbing over single-edge add/delete/reverse moves, accepting the
 * best strictly-improving move until none exists. Restart 0 starts from
 * the empty graph; each further restart starts from a random DAG. Returns
 * the best local optimum across restarts. Deterministic given the seed.
 */
LearnResult learn_greedy(const Dataset& data, const Penalty& p, int restarts,
                         std::uint64_t seed);

/**
 * Smallest subsample size N such that the entropy-estimation failure bound
 *   (N+1)^card * 2^(-N * eps^2 / (3 * log2(1/m)))
 * is at most delta, for a variable (or variable group) with `card` values
 * whose probabilities are all at least m. Requires eps < 1/4.
 */
std::int64_t family_sample_size(std::int64_t family_card, double m, double eps, double delta);

/**
 * Same search as learn_exhaustive, but every entropy term is estimated
 * from a uniform without-replacement subsample instead of the full data.
 * Each family's subsample size comes from family_sample_size with the
 * per-term budget (eps/2n, delta/2n), capped at N; capped families reuse
 * the exact full-data entropies. The skewness argument is m_lower_bound
 * when given, otherwise a pilot estimate (see docs). Deterministic given
 * the seed.
 */
LearnResult learn_subsampled(const Dataset& data, const Penalty& p, double eps, double delta,
                             std::uint64_t seed,
                             std::optional<double> m_lower_bound = std::nullopt,
                             int enum_limit = kDefaultEnumerationLimit);

}  // namespace bnsl
