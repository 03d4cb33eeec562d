#include "bnsl/learner.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "bnsl/errors.hpp"
#include "bnsl/joint_table.hpp"
#include "bnsl/rng.hpp"

namespace bnsl {

const char* learn_mode_name(LearnMode mode) {
    switch (mode) {
        case LearnMode::Exhaustive: return "exhaustive";
        case LearnMode::Greedy: return "greedy";
        case LearnMode::Subsampled: return "subsampled";
    }
    return "?";
}

namespace {

std::uint64_t parent_mask_of(const Structure& g, int var) {
    std::uint64_t mask = 0;
    for (int p : g.parents(var)) mask |= 1ull << p;
    return mask;
}

// Indices of a uniform without-replacement sample of size n_take from
// 0..n_total-1 (selection sampling; ascending, deterministic in the rng).
std::vector<std::int64_t> sample_without_replacement(std::int64_t n_total, std::int64_t n_take,
                                                     Rng& rng) {
    std::vector<std::int64_t> picked;
    picked.reserve(static_cast<std::size_t>(n_take));
    std::int64_t need = n_take;
    for (std::int64_t t = 0; t < n_total && need > 0; ++t) {
        const double accept = static_cast<double>(need) / static_cast<double>(n_total - t);
        if (rng.next_unit() < accept) {
            picked.push_back(t);
            --need;
        }
    }
    return picked;
}

struct BestTracker {
    bool have = false;
    double score = 0.0;
    std::uint64_t params = 0;
    std::size_t index = 0;

    // Higher score wins; ties prefer fewer parameters, then earlier index.
    bool offer(double s, std::uint64_t p, std::size_t i) {
        if (!have || s > score || (s == score && p < params)) {
            have = true;
            score = s;
            params = p;
            index = i;
            return true;
        }
        return false;
    }
};

}  // namespace

LearnResult learn_exhaustive(const Dataset& data, const Penalty& p, int enum_limit) {
    if (data.n_rows() == 0) {
        throw InputError("learn_exhaustive: dataset is empty");
    }
    FamilyEntropyCache cache(data);
    const std::vector<Structure> candidates = enumerate_dags(data.schema(), enum_limit);

    BestTracker best;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const ScoreReport r = score(candidates[k], cache, p);
        best.offer(r.score, r.param_count, k);
    }
    const Structure& g = candidates[best.index];
    return LearnResult{ml_parameters(g, data), score(g, cache, p),
                       static_cast<std::int64_t>(candidates.size()), LearnMode::Exhaustive, {}};
}

namespace {

// Greedy search state: one parent bitmask per variable.
using MaskVec = std::vector<std::uint64_t>;

bool reaches(const MaskVec& parent_masks, int from, int to, int n) {
    // DFS over child edges starting at `from`.
    std::vector<int> stack{from};
    std::uint64_t seen = 1ull << from;
    while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        if (node == to) return true;
        for (int c = 0; c < n; ++c) {
            if ((parent_masks[c] & (1ull << node)) && !(seen & (1ull << c))) {
                seen |= 1ull << c;
                stack.push_back(c);
            }
        }
    }
    return false;
}

std::uint64_t masks_param_count(const Schema& schema, const MaskVec& parent_masks) {
    std::uint64_t total = 0;
    for (int i = 0; i < schema.size(); ++i) {
        std::uint64_t q = 1;
        for (int p = 0; p < schema.size(); ++p) {
            if (parent_masks[i] & (1ull << p)) q *= static_cast<std::uint64_t>(schema.cardinality(p));
        }
        total += static_cast<std::uint64_t>(schema.cardinality(i) - 1) * q;
    }
    return total;
}

double masks_score(const FamilyEntropyCache& cache, const Schema& schema,
                   const MaskVec& parent_masks, double psi) {
    double entropy_sum = 0.0;
    for (int i = 0; i < schema.size(); ++i) {
        entropy_sum += cache.family_cond_entropy(i, parent_masks[i]);
    }
    const double ll = -static_cast<double>(cache.n_rows()) * entropy_sum;
    return ll - static_cast<double>(masks_param_count(schema, parent_masks)) * psi;
}

Structure masks_to_structure(const Schema& schema, const MaskVec& parent_masks) {
    std::vector<std::vector<int>> parents(static_cast<std::size_t>(schema.size()));
    for (int i = 0; i < schema.size(); ++i) {
        for (int p = 0; p < schema.size(); ++p) {
            if (parent_masks[i] & (1ull << p)) parents[i].push_back(p);
        }
    }
    return Structure(schema, std::move(parents));
}

MaskVec random_dag_masks(const Schema& schema, Rng& rng) {
    const int n = schema.size();
    // Random topological order, then each forward edge with probability 1/2.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) {
        std::swap(order[i], order[static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)))]);
    }
    MaskVec masks(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (rng.next_unit() < 0.5) masks[order[b]] |= 1ull << order[a];
        }
    }
    return masks;
}

}  // namespace

LearnResult learn_greedy(const Dataset& data, const Penalty& p, int restarts,
                         std::uint64_t seed) {
    if (restarts < 1) {
        throw InputError("learn_greedy: restarts must be >= 1");
    }
    FamilyEntropyCache cache(data);
    const Schema& schema = data.schema();
    const int n = schema.size();
    const double psi = p.weight(data.n_rows());
    const Rng root(seed);

    std::int64_t evaluated = 0;
    BestTracker best;
    MaskVec best_masks;

    for (int restart = 0; restart < restarts; ++restart) {
        MaskVec masks(static_cast<std::size_t>(n), 0);
        if (restart > 0) {
            Rng stream = root.child(static_cast<std::uint64_t>(restart));
            masks = random_dag_masks(schema, stream);
        }
        double current = masks_score(cache, schema, masks, psi);
        ++evaluated;

        for (;;) {
            double best_move_score = current;
            MaskVec best_move;
            bool improved = false;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    const bool present = (masks[j] >> i) & 1;
                    if (!present) {
                        // add i -> j unless j already reaches i
                        if (reaches(masks, j, i, n)) continue;
                        MaskVec cand = masks;
                        cand[j] |= 1ull << i;
                        const double s = masks_score(cache, schema, cand, psi);
                        ++evaluated;
                        if (s > best_move_score) {
                            best_move_score = s;
                            best_move = std::move(cand);
                            improved = true;
                        }
                    } else {
                        // delete i -> j
                        MaskVec cand = masks;
                        cand[j] &= ~(1ull << i);
                        double s = masks_score(cache, schema, cand, psi);
                        ++evaluated;
                        if (s > best_move_score) {
                            best_move_score = s;
                            best_move = cand;
                            improved = true;
                        }
                        // reverse i -> j: legal unless i still reaches j without it
                        if (!reaches(cand, i, j, n)) {
                            cand[i] |= 1ull << j;
                            s = masks_score(cache, schema, cand, psi);
                            ++evaluated;
                            if (s > best_move_score) {
                                best_move_score = s;
                                best_move = std::move(cand);
                                improved = true;
                            }
                        }
                    }
                }
            }
            if (!improved) break;
            masks = std::move(best_move);
            current = best_move_score;
        }

        if (best.offer(current, masks_param_count(schema, masks), static_cast<std::size_t>(restart))) {
            best_masks = masks;
        }
    }

    const Structure g = masks_to_structure(schema, best_masks);
    return LearnResult{ml_parameters(g, data), score(g, cache, p), evaluated, LearnMode::Greedy, {}};
}

std::int64_t family_sample_size(std::int64_t family_card, double m, double eps, double delta) {
    if (family_card < 2) {
        throw InputError("family_sample_size: cardinality must be >= 2");
    }
    if (!(eps > 0.0) || eps >= 0.25) {
        throw InputError("family_sample_size: eps must lie in (0, 1/4)");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw InputError("family_sample_size: delta must lie in (0, 1)");
    }
    if (!(m > 0.0) || m > 1.0 / static_cast<double>(family_card)) {
        throw InputError("family_sample_size: m must lie in (0, 1/card]");
    }

    const double coef = eps * eps / (3.0 * std::log2(1.0 / m));
    const double card = static_cast<double>(family_card);
    const double target = std::log2(delta);
    // log2 of the bound at N; unimodal in N (rises to a single peak, then
    // falls to -inf).
    const auto bound_log2 = [&](std::int64_t n) {
        return card * std::log2(static_cast<double>(n) + 1.0) - coef * static_cast<double>(n);
    };

    // The bound exceeds 1 at N = 1 (card >= 2, coef < 1/48), so the
    // threshold is past the peak; doubling then bisection.
    constexpr std::int64_t kCap = 1ll << 62;
    std::int64_t hi = 2;
    while (bound_log2(hi) > target) {
        if (hi >= kCap / 2) {
            throw CapacityError("family_sample_size: no admissible size below 2^62");
        }
        hi *= 2;
    }
    std::int64_t lo = hi / 2;  // bound_log2(lo) > target (or lo == 1)
    while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (bound_log2(mid) <= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if (bound_log2(lo) <= target && lo >= 1) return lo;
    return hi;
}

namespace {

struct FamilyEstimate {
    double cond_entropy = 0.0;
    std::int64_t rows_used = 0;
};

double counts_entropy(const std::vector<std::int64_t>& counts, std::int64_t total) {
    double h = 0.0;
    const double n = static_cast<double>(total);
    for (std::int64_t c : counts) {
        if (c > 0) {
            const double pr = static_cast<double>(c) / n;
            h -= pr * std::log2(pr);
        }
    }
    return h;
}

}  // namespace

LearnResult learn_subsampled(const Dataset& data, const Penalty& p, double eps, double delta,
                             std::uint64_t seed, std::optional<double> m_lower_bound,
                             int enum_limit) {
    if (data.n_rows() == 0) {
        throw InputError("learn_subsampled: dataset is empty");
    }
    const Schema& schema = data.schema();
    const int n = schema.size();
    const std::int64_t n_rows = data.n_rows();
    const double eps_term = eps / (2.0 * static_cast<double>(n));
    const double delta_term = delta / (2.0 * static_cast<double>(n));
    if (!(eps_term > 0.0) || eps_term >= 0.25) {
        throw InputError("learn_subsampled: per-term budget eps/2n must lie in (0, 1/4)");
    }
    if (!(delta_term > 0.0 && delta_term < 1.0)) {
        throw InputError("learn_subsampled: per-term budget delta/2n must lie in (0, 1)");
    }

    FamilyEntropyCache full_cache(data);
    const Rng root(seed);

    // Pilot rows for skewness estimation (stream key 0).
    std::vector<std::int64_t> pilot_rows;
    if (!m_lower_bound.has_value()) {
        const std::int64_t pilot_size = std::min<std::int64_t>(n_rows, 4096);
        Rng pilot_stream = root.child(0);
        pilot_rows = sample_without_replacement(n_rows, pilot_size, pilot_stream);
    }

    std::unordered_map<std::uint64_t, FamilyEstimate> estimates;

    const auto family_estimate = [&](int var, std::uint64_t parent_mask) -> const FamilyEstimate& {
        const std::uint64_t key = (static_cast<std::uint64_t>(var) << 32) ^ parent_mask;
        auto it = estimates.find(key);
        if (it != estimates.end()) return it->second;

        const std::uint64_t fam_mask = parent_mask | (1ull << var);
        std::vector<int> fam_vars;
        std::vector<int> par_vars;
        std::int64_t fam_card = 1;
        std::int64_t par_card = 1;
        for (int v = 0; v < n; ++v) {
            if (fam_mask & (1ull << v)) {
                fam_vars.push_back(v);
                fam_card *= schema.cardinality(v);
            }
            if (parent_mask & (1ull << v)) {
                par_vars.push_back(v);
                par_card *= schema.cardinality(v);
            }
        }

        const auto project = [&](std::int64_t row, const std::vector<int>& vars) {
            std::uint64_t cell = 0;
            for (int v : vars) {
                cell = cell * static_cast<std::uint64_t>(schema.cardinality(v)) +
                       static_cast<std::uint64_t>(data.value(row, v));
            }
            return cell;
        };

        // Skewness lower bound for the sizing rule: caller-supplied if
        // given, otherwise the minimum positive family frequency in the
        // pilot, floored at 1/(2N). Clamped into the bound's domain.
        double m_hat;
        if (m_lower_bound.has_value()) {
            m_hat = *m_lower_bound;
        } else {
            std::vector<std::int64_t> counts(static_cast<std::size_t>(fam_card), 0);
            for (std::int64_t r : pilot_rows) ++counts[project(r, fam_vars)];
            std::int64_t min_pos = 0;
            for (std::int64_t c : counts) {
                if (c > 0 && (min_pos == 0 || c < min_pos)) min_pos = c;
            }
            m_hat = static_cast<double>(min_pos) / static_cast<double>(pilot_rows.size());
            m_hat = std::max(m_hat, 1.0 / (2.0 * static_cast<double>(n_rows)));
        }
        m_hat = std::min(m_hat, 1.0 / static_cast<double>(fam_card));

        const std::int64_t wanted = family_sample_size(fam_card, m_hat, eps_term, delta_term);
        FamilyEstimate est;
        if (wanted >= n_rows) {
            // Full data: identical arithmetic to the exhaustive learner.
            est.rows_used = n_rows;
            est.cond_entropy = full_cache.family_cond_entropy(var, parent_mask);
        } else {
            Rng stream = root.child(key == 0 ? 1 : key);  // key 0 reserved for the pilot
            const std::vector<std::int64_t> rows = sample_without_replacement(n_rows, wanted, stream);
            std::vector<std::int64_t> fam_counts(static_cast<std::size_t>(fam_card), 0);
            std::vector<std::int64_t> par_counts(static_cast<std::size_t>(par_card), 0);
            for (std::int64_t r : rows) {
                ++fam_counts[project(r, fam_vars)];
                ++par_counts[par_vars.empty() ? 0 : project(r, par_vars)];
            }
            est.rows_used = wanted;
            est.cond_entropy = counts_entropy(fam_counts, wanted) -
                               (par_vars.empty() ? 0.0 : counts_entropy(par_counts, wanted));
        }
        return estimates.emplace(key, est).first->second;
    };

    const std::vector<Structure> candidates = enumerate_dags(schema, enum_limit);
    const double psi = p.weight(n_rows);

    BestTracker best;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const Structure& g = candidates[k];
        double entropy_sum = 0.0;
        for (int i = 0; i < n; ++i) {
            entropy_sum += family_estimate(i, parent_mask_of(g, i)).cond_entropy;
        }
        const double ll = -static_cast<double>(n_rows) * entropy_sum;
        const std::uint64_t params = g.param_count();
        best.offer(ll - static_cast<double>(params) * psi, params, k);
    }

    const Structure& g = candidates[best.index];
    double entropy_sum = 0.0;
    std::vector<std::int64_t> sizes;
    sizes.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const FamilyEstimate& est = family_estimate(i, parent_mask_of(g, i));
        entropy_sum += est.cond_entropy;
        sizes.push_back(est.rows_used);
    }
    const double ll = -static_cast<double>(n_rows) * entropy_sum;
    const std::uint64_t params = g.param_count();
    ScoreReport report{g, ll, psi, params, ll - static_cast<double>(params) * psi};
    return LearnResult{ml_parameters(g, data), std::move(report),
                       static_cast<std::int64_t>(candidates.size()), LearnMode::Subsampled,
                       std::move(sizes)};
}

}  // namespace bnsl
