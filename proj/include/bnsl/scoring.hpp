#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

#include "bnsl/dataset.hpp"
#include "bnsl/penalty.hpp"
#include "bnsl/structure.hpp"

namespace bnsl {

// One scored structure. The invariant score == log_likelihood -
// param_count * penalty_weight holds with the exact arithmetic that
// produced it.
struct ScoreReport {
    Structure structure;
    double log_likelihood;
    double penalty_weight;
    std::uint64_t param_count;
    double score;

    static std::string csv_header();  // structure,ll,psi,params,score
    std::string csv_row() const;
};

/**
 * Entropy terms of the decomposed log-likelihood, cached per variable
 * subset. All entropies are computed from exact integer marginal counts,
 * so equal subsets always produce bit-identical values regardless of the
 * structure being scored or the row order of the data.
 */
class FamilyEntropyCache {
public:
    explicit FamilyEntropyCache(const Dataset& data);

    const Dataset& data() const { return *data_; }
    std::int64_t n_rows() const { return data_->n_rows(); }

    // H of the marginal count table over the variables in `mask`, bits.
    // H(empty set) = 0.
    double subset_entropy(std::uint64_t mask) const;

    // H(var | parents) = H(family) - H(parents), bits.
    double family_cond_entropy(int var, std::uint64_t parent_mask) const;

    // Exact marginal counts for a subset (cells in subset mixed-radix
    // order, lowest-index variable most significant).
    std::vector<std::int64_t> subset_counts(std::uint64_t mask) const;

private:
    const Dataset* data_;
    mutable std::unordered_map<std::uint64_t, double> entropy_by_mask_;
};

// Decomposed log-likelihood of a structure, bits:
//   LL(G) = -N * sum_i H(X_i | parents_i)
// with all conditional entropies taken under the empirical distribution.
// Never evaluated row-by-row, so unseen configurations cannot poison it.
double log_likelihood(const Structure& g, const FamilyEntropyCache& cache);
double log_likelihood(const Structure& g, const Dataset& data);

// Penalized score S(G) = LL(G) - |G| * psi(N).
ScoreReport score(const Structure& g, const FamilyEntropyCache& cache, const Penalty& p);
ScoreReport score(const Structure& g, const Dataset& data, const Penalty& p);

enum class ScoreOrdering { FirstBetter, SecondBetter, Tie };

// Ordering of score(g1) vs score(g2); Tie means exact equality of the two
// scores as computed.
ScoreOrdering compare(const Structure& g1, const Structure& g2, const Dataset& data,
                      const Penalty& p);

}  // namespace bnsl
