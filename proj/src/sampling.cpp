#include "bnsl/sampling.hpp"

#include "bnsl/errors.hpp"

namespace bnsl {

int sample_index(std::span<const double> probs, double u) {
    double cumulative = 0.0;
    const int last = static_cast<int>(probs.size()) - 1;
    for (int v = 0; v < last; ++v) {
        cumulative += probs[v];
        if (u < cumulative) return v;
    }
    return last;
}

Dataset ancestral_sample(const BayesNet& net, std::int64_t n_rows, Rng& rng) {
    if (n_rows < 0) {
        throw InputError("ancestral_sample: negative row count");
    }
    const Schema& schema = net.schema();
    const int n = schema.size();
    const std::vector<int>& order = net.structure().topological_order();

    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n));
    Assignment u(static_cast<std::size_t>(n), 0);
    for (std::int64_t r = 0; r < n_rows; ++r) {
        for (int var : order) {
            const std::uint64_t config = net.parent_config_of(var, u);
            u[var] = sample_index(net.cpt_row(var, config), rng.next_unit());
        }
        flat.insert(flat.end(), u.begin(), u.end());
    }
    return Dataset(schema, std::move(flat));
}

Dataset ancestral_sample(const BayesNet& net, std::int64_t n_rows, std::uint64_t seed) {
    Rng rng(seed);
    return ancestral_sample(net, n_rows, rng);
}

}  // namespace bnsl
