#include "bnsl/structure.hpp"

#include <algorithm>

#include "bnsl/errors.hpp"

namespace bnsl {

Structure::Structure(Schema schema, std::vector<std::vector<int>> parents)
    : schema_(std::move(schema)), parents_(std::move(parents)) {
    const int n = schema_.size();
    if (static_cast<int>(parents_.size()) != n) {
        throw InputError("structure: parent list count " + std::to_string(parents_.size()) +
                         " does not match variable count " + std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
        std::vector<int>& ps = parents_[i];
        std::sort(ps.begin(), ps.end());
        for (std::size_t k = 0; k < ps.size(); ++k) {
            if (ps[k] < 0 || ps[k] >= n) {
                throw InputError("structure: parent index " + std::to_string(ps[k]) +
                                 " out of range");
            }
            if (ps[k] == i) {
                throw InputError("structure: variable '" + schema_.name(i) +
                                 "' cannot be its own parent");
            }
            if (k > 0 && ps[k] == ps[k - 1]) {
                throw InputError("structure: duplicate parent " + std::to_string(ps[k]) +
                                 " of variable '" + schema_.name(i) + "'");
            }
        }
    }

    // Kahn's algorithm; stable tie-break on variable index.
    std::vector<int> remaining_parents(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        remaining_parents[i] = static_cast<int>(parents_[i].size());
        for (int p : parents_[i]) children[p].push_back(i);
    }
    topo_order_.reserve(static_cast<std::size_t>(n));
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    for (int step = 0; step < n; ++step) {
        int next = -1;
        for (int i = 0; i < n; ++i) {
            if (!placed[i] && remaining_parents[i] == 0) {
                next = i;
                break;
            }
        }
        if (next < 0) {
            throw InputError("structure: parent relation contains a cycle");
        }
        placed[next] = true;
        topo_order_.push_back(next);
        for (int c : children[next]) --remaining_parents[c];
    }
}

bool Structure::has_edge(int parent, int child) const {
    const std::vector<int>& ps = parents_[child];
    return std::binary_search(ps.begin(), ps.end(), parent);
}

int Structure::edge_count() const {
    int total = 0;
    for (const auto& ps : parents_) total += static_cast<int>(ps.size());
    return total;
}

std::vector<std::pair<int, int>> Structure::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int child = 0; child < size(); ++child) {
        for (int parent : parents_[child]) out.emplace_back(parent, child);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t Structure::parent_config_count(int var) const {
    std::uint64_t q = 1;
    for (int p : parents_[var]) q *= static_cast<std::uint64_t>(schema_.cardinality(p));
    return q;
}

std::uint64_t Structure::param_count() const {
    std::uint64_t total = 0;
    for (int i = 0; i < size(); ++i) {
        total += static_cast<std::uint64_t>(schema_.cardinality(i) - 1) * parent_config_count(i);
    }
    return total;
}

std::string Structure::edge_list_string() const {
    std::string out;
    for (const auto& [parent, child] : edges()) {
        if (!out.empty()) out += ';';
        out += schema_.name(parent);
        out += "->";
        out += schema_.name(child);
    }
    return out;
}

bool Structure::operator==(const Structure& other) const {
    return schema_ == other.schema_ && parents_ == other.parents_;
}

bool is_substructure(const Structure& g1, const Structure& g2) {
    if (g1.schema() != g2.schema()) {
        throw InputError("is_substructure: schemas differ");
    }
    for (int child = 0; child < g1.size(); ++child) {
        for (int parent : g1.parents(child)) {
            if (!g2.has_edge(parent, child)) return false;
        }
    }
    return true;
}

Structure empty_structure(const Schema& schema) {
    return Structure(schema, std::vector<std::vector<int>>(static_cast<std::size_t>(schema.size())));
}

Structure structure_from_edges(const Schema& schema,
                               const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> parents(static_cast<std::size_t>(schema.size()));
    for (const auto& [parent, child] : edges) {
        if (child < 0 || child >= schema.size()) {
            throw InputError("structure_from_edges: child index out of range");
        }
        parents[child].push_back(parent);
    }
    return Structure(schema, std::move(parents));
}

}  // namespace bnsl
