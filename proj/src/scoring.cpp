#include "bnsl/scoring.hpp"

#include <cmath>
#include <cstdio>

#include "bnsl/errors.hpp"
#include "bnsl/joint_table.hpp"

namespace bnsl {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string ScoreReport::csv_header() { return "structure,ll,psi,params,score"; }

std::string ScoreReport::csv_row() const {
    return structure.edge_list_string() + "," + format_double(log_likelihood) + "," +
           format_double(penalty_weight) + "," + std::to_string(param_count) + "," +
           format_double(score);
}

FamilyEntropyCache::FamilyEntropyCache(const Dataset& data) : data_(&data) {
    if (data.n_rows() == 0) {
        throw InputError("scoring: dataset is empty");
    }
    if (data.schema().size() > 63) {
        throw CapacityError("scoring: subset masks support at most 63 variables");
    }
}

std::vector<std::int64_t> FamilyEntropyCache::subset_counts(std::uint64_t mask) const {
    const Schema& schema = data_->schema();
    std::vector<int> vars;
    std::uint64_t size = 1;
    for (int i = 0; i < schema.size(); ++i) {
        if (mask & (1ull << i)) {
            vars.push_back(i);
            size *= static_cast<std::uint64_t>(schema.cardinality(i));
            if (size > kDenseTableCapacity) {
                throw CapacityError("scoring: marginal domain exceeds dense capacity");
            }
        }
    }
    std::vector<std::int64_t> counts(static_cast<std::size_t>(size), 0);
    for (std::int64_t r = 0; r < data_->n_rows(); ++r) {
        std::uint64_t cell = 0;
        for (int v : vars) {
            cell = cell * static_cast<std::uint64_t>(schema.cardinality(v)) +
                   static_cast<std::uint64_t>(data_->value(r, v));
        }
        ++counts[cell];
    }
    return counts;
}

double FamilyEntropyCache::subset_entropy(std::uint64_t mask) const {
    if (mask == 0) return 0.0;
    auto it = entropy_by_mask_.find(mask);
    if (it != entropy_by_mask_.end()) return it->second;

    const std::vector<std::int64_t> counts = subset_counts(mask);
    const double n = static_cast<double>(data_->n_rows());
    double h = 0.0;
    for (std::int64_t c : counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / n;
            h -= p * std::log2(p);
        }
    }
    entropy_by_mask_.emplace(mask, h);
    return h;
}

double FamilyEntropyCache::family_cond_entropy(int var, std::uint64_t parent_mask) const {
    return subset_entropy(parent_mask | (1ull << var)) - subset_entropy(parent_mask);
}

namespace {

std::uint64_t parent_mask_of(const Structure& g, int var) {
    std::uint64_t mask = 0;
    for (int p : g.parents(var)) mask |= 1ull << p;
    return mask;
}

}  // namespace

double log_likelihood(const Structure& g, const FamilyEntropyCache& cache) {
    if (g.schema() != cache.data().schema()) {
        throw InputError("log_likelihood: structure and dataset schemas differ");
    }
    double entropy_sum = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        entropy_sum += cache.family_cond_entropy(i, parent_mask_of(g, i));
    }
    return -static_cast<double>(cache.n_rows()) * entropy_sum;
}

double log_likelihood(const Structure& g, const Dataset& data) {
    FamilyEntropyCache cache(data);
    return log_likelihood(g, cache);
}

ScoreReport score(const Structure& g, const FamilyEntropyCache& cache, const Penalty& p) {
    const double ll = log_likelihood(g, cache);
    const double psi = p.weight(cache.n_rows());
    const std::uint64_t params = g.param_count();
    return ScoreReport{g, ll, psi, params, ll - static_cast<double>(params) * psi};
}

ScoreReport score(const Structure& g, const Dataset& data, const Penalty& p) {
    FamilyEntropyCache cache(data);
    return score(g, cache, p);
}

ScoreOrdering compare(const Structure& g1, const Structure& g2, const Dataset& data,
                      const Penalty& p) {
    FamilyEntropyCache cache(data);
    const double s1 = score(g1, cache, p).score;
    const double s2 = score(g2, cache, p).score;
    if (s1 > s2) return ScoreOrdering::FirstBetter;
    if (s2 > s1) return ScoreOrdering::SecondBetter;
    return ScoreOrdering::Tie;
}

}  // namespace bnsl
