#include "bnsl/dag_enum.hpp"

#include <cstdint>

#include "bnsl/errors.hpp"

namespace bnsl {

namespace {

// Cycle check on an adjacency-cell bitmask via iterative DFS.
bool mask_is_acyclic(std::uint64_t mask, int n, const std::vector<std::pair<int, int>>& cells) {
    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (mask & (1ull << (cells.size() - 1 - k))) {
            children[cells[k].first].push_back(cells[k].second);
        }
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> state(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, std::size_t>> stack;
    for (int start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        stack.clear();
        stack.emplace_back(start, 0);
        state[start] = 1;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < children[node].size()) {
                const int c = children[node][next++];
                if (state[c] == 1) return false;
                if (state[c] == 0) {
                    state[c] = 1;
                    stack.emplace_back(c, 0);
                }
            } else {
                state[node] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

}  // namespace

std::vector<Structure> enumerate_dags(const Schema& schema, int limit) {
    const int n = schema.size();
    if (n > limit) {
        throw CapacityError("enumerate_dags: " + std::to_string(n) +
                            " variables exceeds the enumeration limit " + std::to_string(limit));
    }

    // Off-diagonal adjacency cells in row-major order; cell k maps to bit
    // (E-1-k) of the mask so that ascending masks give lexicographic order
    // on the flattened adjacency string.
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) cells.emplace_back(i, j);
        }
    }
    const std::size_t n_cells = cells.size();

    std::vector<Structure> out;
    for (std::uint64_t mask = 0; mask < (1ull << n_cells); ++mask) {
        if (!mask_is_acyclic(mask, n, cells)) continue;
        std::vector<std::vector<int>> parents(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < n_cells; ++k) {
            if (mask & (1ull << (n_cells - 1 - k))) {
                parents[cells[k].second].push_back(cells[k].first);
            }
        }
        out.emplace_back(schema, std::move(parents));
    }
    return out;
}

}  // namespace bnsl
