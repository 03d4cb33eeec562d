#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bnsl/bayesnet.hpp"
#include "bnsl/dataset.hpp"

namespace bnsl {

// Dense joint tables are capped at this many cells.
inline constexpr std::uint64_t kDenseTableCapacity = 1ull << 20;

/**
 * Dense joint probability table over all complete assignments, indexed by
 * the schema's mixed-radix encoding. Entries are nonnegative and sum to 1
 * within 1e-9. Immutable.
 */
class JointTable {
public:
    JointTable(Schema schema, std::vector<double> probs);

    const Schema& schema() const { return schema_; }
    std::uint64_t size() const { return static_cast<std::uint64_t>(probs_.size()); }
    double prob(std::uint64_t cell) const { return probs_[cell]; }
    double prob(const Assignment& u) const { return probs_[schema_.index_of(u)]; }
    std::span<const double> probs() const { return probs_; }

private:
    Schema schema_;
    std::vector<double> probs_;
};

// Frequency table of the rows. Dataset must be nonempty.
JointTable empirical(const Dataset& data);

// The net's joint distribution, one cell per assignment. Throws
// CapacityError above kDenseTableCapacity cells.
JointTable net_to_table(const BayesNet& net);

// Marginal probabilities over a sorted ascending subset of variables
// (mixed-radix over the subset, first listed variable most significant).
std::vector<double> marginal(const JointTable& table, const std::vector<int>& vars);

// Shannon entropy in bits of a probability vector; 0 log 0 = 0.
double entropy_bits(std::span<const double> probs);

// H(targets | given) = H(targets u given) - H(given), bits. The two sets
// must be disjoint.
double cond_entropy(const JointTable& table, const std::vector<int>& targets,
                    const std::vector<int>& given);

// Entropy distance D(P||Q) = sum_x P(x) log2(P(x)/Q(x)), bits. Terms with
// P(x) = 0 contribute 0; any x with P(x) > 0 and Q(x) = 0 makes the
// distance +infinity. Schemas must match.
double entropy_distance(const JointTable& p, const JointTable& q);

// sum_x |P(x) - Q(x)|, in [0, 2]. Schemas must match.
double l1_distance(const JointTable& p, const JointTable& q);

struct Skewness {
    double m_all;  // minimum over all cells (0 if any cell is 0)
    double m_pos;  // minimum over strictly positive cells
};

Skewness skewness(const JointTable& table);

/**
 * Maximum-likelihood parameters of a structure: each conditional vector is
 * the observed conditional frequency. Parent configurations never observed
 * get the uniform vector, which leaves the likelihood unchanged and keeps
 * the fitted distribution positive on those slices.
 */
BayesNet ml_parameters(const Structure& g, const Dataset& data);

}  // namespace bnsl
