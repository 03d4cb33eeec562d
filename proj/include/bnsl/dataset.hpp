#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bnsl/schema.hpp"

namespace bnsl {

/**
 * Ordered list of complete assignments, stored flat (row-major, one int
 * per variable). Rows are validated against the schema at construction.
 * Immutable.
 */
class Dataset {
public:
    Dataset(Schema schema, std::vector<int> values);

    static Dataset from_rows(Schema schema, const std::vector<Assignment>& rows);

    const Schema& schema() const { return schema_; }
    std::int64_t n_rows() const { return n_rows_; }
    int n_vars() const { return schema_.size(); }

    int value(std::int64_t row, int var) const {
        return values_[static_cast<std::size_t>(row) * static_cast<std::size_t>(n_vars()) +
                       static_cast<std::size_t>(var)];
    }
    std::span<const int> row(std::int64_t r) const {
        return std::span<const int>(values_).subspan(
            static_cast<std::size_t>(r) * static_cast<std::size_t>(n_vars()),
            static_cast<std::size_t>(n_vars()));
    }
    const std::vector<int>& values() const { return values_; }

    bool operator==(const Dataset& other) const {
        return schema_ == other.schema_ && values_ == other.values_;
    }

private:
    Schema schema_;
    std::vector<int> values_;
    std::int64_t n_rows_ = 0;
};

}  // namespace bnsl
