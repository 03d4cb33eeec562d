#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bnsl/schema.hpp"

namespace bnsl {

/**
 * Directed acyclic graph over a schema's variables. parents[i] is the
 * sorted set of parent indices of variable i. Acyclicity is checked at
 * construction; a topological order is cached. Immutable.
 */
class Structure {
public:
    Structure(Schema schema, std::vector<std::vector<int>> parents);

    const Schema& schema() const { return schema_; }
    int size() const { return schema_.size(); }
    const std::vector<int>& parents(int var) const { return parents_[var]; }
    bool has_edge(int parent, int child) const;
    int edge_count() const;

    // All edges as (parent, child), sorted.
    std::vector<std::pair<int, int>> edges() const;

    // Topological order, canonical: lowest-index variable first among ready
    // nodes.
    const std::vector<int>& topological_order() const { return topo_order_; }

    // Number of parent configurations q_i of variable i.
    std::uint64_t parent_config_count(int var) const;

    // Independent parameters: sum over variables of (r_i - 1) * q_i.
    std::uint64_t param_count() const;

    // "A->B;C->B" with edges sorted by (parent, child); "" when empty.
    std::string edge_list_string() const;

    bool operator==(const Structure& other) const;
    bool operator!=(const Structure& other) const { return !(*this == other); }

private:
    Schema schema_;
    std::vector<std::vector<int>> parents_;
    std::vector<int> topo_order_;
};

// True iff every edge of g1 is an edge of g2. Schemas must match.
bool is_substructure(const Structure& g1, const Structure& g2);

// Structure with no edges.
Structure empty_structure(const Schema& schema);

// Structure from an explicit edge list (parent, child).
Structure structure_from_edges(const Schema& schema,
                               const std::vector<std::pair<int, int>>& edges);

}  // namespace bnsl
