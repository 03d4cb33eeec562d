#include "bnsl/joint_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bnsl/errors.hpp"

namespace bnsl {

namespace {

constexpr double kTableSumTolerance = 1e-9;

void check_capacity(const Schema& schema, const char* where) {
    if (schema.joint_size() > kDenseTableCapacity) {
        throw CapacityError(std::string(where) + ": joint domain size " +
                            std::to_string(schema.joint_size()) +
                            " exceeds the dense-table capacity " +
                            std::to_string(kDenseTableCapacity));
    }
}

}  // namespace

JointTable::JointTable(Schema schema, std::vector<double> probs)
    : schema_(std::move(schema)), probs_(std::move(probs)) {
    check_capacity(schema_, "joint_table");
    if (static_cast<std::uint64_t>(probs_.size()) != schema_.joint_size()) {
        throw InputError("joint_table: " + std::to_string(probs_.size()) +
                         " entries for a domain of size " + std::to_string(schema_.joint_size()));
    }
    double sum = 0.0;
    for (double p : probs_) {
        if (p < 0.0 || !std::isfinite(p)) {
            throw InputError("joint_table: negative or non-finite entry");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kTableSumTolerance) {
        throw InputError("joint_table: entries sum to " + std::to_string(sum));
    }
}

JointTable empirical(const Dataset& data) {
    if (data.n_rows() == 0) {
        throw InputError("empirical: dataset is empty");
    }
    check_capacity(data.schema(), "empirical");
    const Schema& schema = data.schema();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(schema.joint_size()), 0);
    const int n = schema.size();
    for (std::int64_t r = 0; r < data.n_rows(); ++r) {
        std::uint64_t index = 0;
        for (int i = 0; i < n; ++i) {
            index = index * static_cast<std::uint64_t>(schema.cardinality(i)) +
                    static_cast<std::uint64_t>(data.value(r, i));
        }
        ++counts[index];
    }
    std::vector<double> probs(counts.size());
    const double n_rows = static_cast<double>(data.n_rows());
    for (std::size_t c = 0; c < counts.size(); ++c) {
        probs[c] = static_cast<double>(counts[c]) / n_rows;
    }
    return JointTable(schema, std::move(probs));
}

JointTable net_to_table(const BayesNet& net) {
    const Schema& schema = net.schema();
    check_capacity(schema, "net_to_table");
    const std::uint64_t size = schema.joint_size();
    std::vector<double> probs(static_cast<std::size_t>(size));
    Assignment u(static_cast<std::size_t>(schema.size()), 0);
    for (std::uint64_t cell = 0; cell < size; ++cell) {
        double prob = 1.0;
        for (int i = 0; i < schema.size(); ++i) {
            prob *= net.cpt_row(i, net.parent_config_of(i, u))[u[i]];
        }
        probs[cell] = prob;
        // Odometer increment over the assignment (last variable fastest).
        for (int i = schema.size() - 1; i >= 0; --i) {
            if (++u[i] < schema.cardinality(i)) break;
            u[i] = 0;
        }
    }
    return JointTable(schema, std::move(probs));
}

std::vector<double> marginal(const JointTable& table, const std::vector<int>& vars) {
    const Schema& schema = table.schema();
    for (std::size_t k = 0; k < vars.size(); ++k) {
        if (vars[k] < 0 || vars[k] >= schema.size()) {
            throw InputError("marginal: variable index out of range");
        }
        if (k > 0 && vars[k] <= vars[k - 1]) {
            throw InputError("marginal: variables must be sorted ascending and distinct");
        }
    }
    std::uint64_t out_size = 1;
    for (int v : vars) out_size *= static_cast<std::uint64_t>(schema.cardinality(v));
    std::vector<double> out(static_cast<std::size_t>(out_size), 0.0);

    const std::uint64_t total = table.size();
    Assignment u(static_cast<std::size_t>(schema.size()), 0);
    for (std::uint64_t cell = 0; cell < total; ++cell) {
        std::uint64_t sub = 0;
        for (int v : vars) {
            sub = sub * static_cast<std::uint64_t>(schema.cardinality(v)) +
                  static_cast<std::uint64_t>(u[v]);
        }
        out[sub] += table.prob(cell);
        for (int i = schema.size() - 1; i >= 0; --i) {
            if (++u[i] < schema.cardinality(i)) break;
            u[i] = 0;
        }
    }
    return out;
}

double entropy_bits(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

double cond_entropy(const JointTable& table, const std::vector<int>& targets,
                    const std::vector<int>& given) {
    std::vector<int> union_vars = targets;
    union_vars.insert(union_vars.end(), given.begin(), given.end());
    std::sort(union_vars.begin(), union_vars.end());
    if (std::adjacent_find(union_vars.begin(), union_vars.end()) != union_vars.end()) {
        throw InputError("cond_entropy: targets and given overlap");
    }
    std::vector<int> given_sorted = given;
    std::sort(given_sorted.begin(), given_sorted.end());
    const double h_union = entropy_bits(marginal(table, union_vars));
    const double h_given = entropy_bits(marginal(table, given_sorted));
    return h_union - h_given;
}

double entropy_distance(const JointTable& p, const JointTable& q) {
    if (p.schema() != q.schema()) {
        throw InputError("entropy_distance: schemas differ");
    }
    double d = 0.0;
    for (std::uint64_t cell = 0; cell < p.size(); ++cell) {
        const double pv = p.prob(cell);
        if (pv == 0.0) continue;
        const double qv = q.prob(cell);
        if (qv == 0.0) return std::numeric_limits<double>::infinity();
        d += pv * std::log2(pv / qv);
    }
    return d < 0.0 ? 0.0 : d;
}

double l1_distance(const JointTable& p, const JointTable& q) {
    if (p.schema() != q.schema()) {
        throw InputError("l1_distance: schemas differ");
    }
    double d = 0.0;
    for (std::uint64_t cell = 0; cell < p.size(); ++cell) {
        d += std::abs(p.prob(cell) - q.prob(cell));
    }
    return d;
}

Skewness skewness(const JointTable& table) {
    double m_all = std::numeric_limits<double>::infinity();
    double m_pos = std::numeric_limits<double>::infinity();
    for (std::uint64_t cell = 0; cell < table.size(); ++cell) {
        const double p = table.prob(cell);
        m_all = std::min(m_all, p);
        if (p > 0.0) m_pos = std::min(m_pos, p);
    }
    return {m_all, m_pos};
}

BayesNet ml_parameters(const Structure& g, const Dataset& data) {
    if (g.schema() != data.schema()) {
        throw InputError("ml_parameters: structure and dataset schemas differ");
    }
    if (data.n_rows() == 0) {
        throw InputError("ml_parameters: dataset is empty");
    }
    const Schema& schema = g.schema();
    const int n = schema.size();

    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::uint64_t q = g.parent_config_count(i);
        const int r = schema.cardinality(i);
        std::vector<std::int64_t> counts(static_cast<std::size_t>(q * static_cast<std::uint64_t>(r)), 0);
        for (std::int64_t row = 0; row < data.n_rows(); ++row) {
            std::uint64_t config = 0;
            for (int p : g.parents(i)) {
                config = config * static_cast<std::uint64_t>(schema.cardinality(p)) +
                         static_cast<std::uint64_t>(data.value(row, p));
            }
            ++counts[config * static_cast<std::uint64_t>(r) +
                     static_cast<std::uint64_t>(data.value(row, i))];
        }
        std::vector<double> cpt(counts.size());
        for (std::uint64_t config = 0; config < q; ++config) {
            std::int64_t total = 0;
            for (int v = 0; v < r; ++v) {
                total += counts[config * static_cast<std::uint64_t>(r) + static_cast<std::uint64_t>(v)];
            }
            for (int v = 0; v < r; ++v) {
                const std::size_t k =
                    static_cast<std::size_t>(config * static_cast<std::uint64_t>(r) +
                                             static_cast<std::uint64_t>(v));
                cpt[k] = total > 0 ? static_cast<double>(counts[k]) / static_cast<double>(total)
                                   : 1.0 / static_cast<double>(r);
            }
        }
        cpts[i] = std::move(cpt);
    }
    return BayesNet(g, std::move(cpts));
}

}  // namespace bnsl
