#include "bnsl/dataset.hpp"

#include "bnsl/errors.hpp"

namespace bnsl {

Dataset::Dataset(Schema schema, std::vector<int> values)
    : schema_(std::move(schema)), values_(std::move(values)) {
    const int n = schema_.size();
    if (n == 0) {
        throw InputError("dataset: schema has no variables");
    }
    if (values_.size() % static_cast<std::size_t>(n) != 0) {
        throw InputError("dataset: flat value count " + std::to_string(values_.size()) +
                         " is not a multiple of variable count " + std::to_string(n));
    }
    n_rows_ = static_cast<std::int64_t>(values_.size() / static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const int var = static_cast<int>(k % static_cast<std::size_t>(n));
        if (values_[k] < 0 || values_[k] >= schema_.cardinality(var)) {
            throw InputError("dataset: row " + std::to_string(k / static_cast<std::size_t>(n)) +
                             " has value " + std::to_string(values_[k]) +
                             " out of range for variable '" + schema_.name(var) + "'");
        }
    }
}

Dataset Dataset::from_rows(Schema schema, const std::vector<Assignment>& rows) {
    std::vector<int> flat;
    flat.reserve(rows.size() * static_cast<std::size_t>(schema.size()));
    for (const Assignment& r : rows) {
        if (static_cast<int>(r.size()) != schema.size()) {
            throw InputError("dataset: row length does not match schema");
        }
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return Dataset(std::move(schema), std::move(flat));
}

}  // namespace bnsl
