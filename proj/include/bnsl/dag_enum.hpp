#pragma once

#include <vector>

#include "bnsl/structure.hpp"

namespace bnsl {

// Exhaustive search over all labeled DAGs is capped here by default
// (29281 structures at n = 5).
inline constexpr int kDefaultEnumerationLimit = 5;

/**
 * Every labeled DAG over the schema, exactly once, in canonical order:
 * lexicographic on the flattened adjacency relation (off-diagonal cells
 * (0,1),(0,2),...,(1,0),... read as a binary string, absent edge first).
 * The empty structure is always first. Throws CapacityError when the
 * schema has more than `limit` variables.
 */
std::vector<Structure> enumerate_dags(const Schema& schema,
                                      int limit = kDefaultEnumerationLimit);

}  // namespace bnsl
