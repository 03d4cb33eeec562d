#pragma once

#include <cstdint>

#include "bnsl/bayesnet.hpp"
#include "bnsl/dataset.hpp"
#include "bnsl/rng.hpp"

namespace bnsl {

/**
 * N independent rows drawn from the net's joint distribution by sampling
 * variables in topological order. Deterministic in (net, n_rows, seed):
 * equal inputs give bitwise-equal datasets.
 */
Dataset ancestral_sample(const BayesNet& net, std::int64_t n_rows, std::uint64_t seed);

// Same, drawing from a caller-owned stream.
Dataset ancestral_sample(const BayesNet& net, std::int64_t n_rows, Rng& rng);

// CDF inversion over a probability vector; u in [0, 1).
int sample_index(std::span<const double> probs, double u);

}  // namespace bnsl
