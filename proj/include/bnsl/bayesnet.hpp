#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bnsl/structure.hpp"

namespace bnsl {

/**
 * Discrete Bayesian network: a Structure plus one conditional probability
 * table per variable. The table of variable i holds q_i rows of r_i
 * probabilities, row-major by parent configuration; parent configurations
 * are mixed-radix encoded over the sorted parent list (first parent most
 * significant). Every row must be nonnegative and sum to 1 within 1e-9.
 * Immutable.
 */
class BayesNet {
public:
    BayesNet(Structure structure, std::vector<std::vector<double>> cpts);

    const Structure& structure() const { return structure_; }
    const Schema& schema() const { return structure_.schema(); }

    // Probability vector over var's values for one parent configuration.
    std::span<const double> cpt_row(int var, std::uint64_t parent_config) const;
    const std::vector<double>& cpt(int var) const { return cpts_[var]; }

    // Parent configuration of var under a complete assignment.
    std::uint64_t parent_config_of(int var, const Assignment& u) const;

    // Product of the per-variable conditional probabilities.
    double joint_prob(const Assignment& u) const;

private:
    Structure structure_;
    std::vector<std::vector<double>> cpts_;
};

// Row-sum tolerance enforced at construction.
inline constexpr double kCptRowSumTolerance = 1e-9;

}  // namespace bnsl
