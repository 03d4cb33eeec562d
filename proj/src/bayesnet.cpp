#include "bnsl/bayesnet.hpp"

#include <cmath>

#include "bnsl/errors.hpp"

namespace bnsl {

BayesNet::BayesNet(Structure structure, std::vector<std::vector<double>> cpts)
    : structure_(std::move(structure)), cpts_(std::move(cpts)) {
    const int n = structure_.size();
    if (static_cast<int>(cpts_.size()) != n) {
        throw InputError("bayesnet: need one CPT per variable");
    }
    for (int i = 0; i < n; ++i) {
        const std::uint64_t q = structure_.parent_config_count(i);
        const int r = schema().cardinality(i);
        if (cpts_[i].size() != q * static_cast<std::uint64_t>(r)) {
            throw InputError("bayesnet: CPT of '" + schema().name(i) + "' has " +
                             std::to_string(cpts_[i].size()) + " entries, expected " +
                             std::to_string(q * static_cast<std::uint64_t>(r)));
        }
        for (std::uint64_t row = 0; row < q; ++row) {
            double sum = 0.0;
            for (int v = 0; v < r; ++v) {
                const double p = cpts_[i][row * static_cast<std::uint64_t>(r) + v];
                if (p < 0.0 || !std::isfinite(p)) {
                    throw InputError("bayesnet: negative or non-finite probability in CPT of '" +
                                     schema().name(i) + "'");
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > kCptRowSumTolerance) {
                throw InputError("bayesnet: CPT row of '" + schema().name(i) + "' sums to " +
                                 std::to_string(sum));
            }
        }
    }
}

std::span<const double> BayesNet::cpt_row(int var, std::uint64_t parent_config) const {
    const int r = schema().cardinality(var);
    return std::span<const double>(cpts_[var]).subspan(
        parent_config * static_cast<std::uint64_t>(r), static_cast<std::size_t>(r));
}

std::uint64_t BayesNet::parent_config_of(int var, const Assignment& u) const {
    std::uint64_t config = 0;
    for (int p : structure_.parents(var)) {
        config = config * static_cast<std::uint64_t>(schema().cardinality(p)) +
                 static_cast<std::uint64_t>(u[p]);
    }
    return config;
}

double BayesNet::joint_prob(const Assignment& u) const {
    schema().validate(u);
    double prob = 1.0;
    for (int i = 0; i < structure_.size(); ++i) {
        prob *= cpt_row(i, parent_config_of(i, u))[u[i]];
    }
    return prob;
}

}  // namespace bnsl
