#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bnsl {

// One discrete variable: display name plus domain size (number of values).
struct Variable {
    std::string name;
    int cardinality = 2;
};

// A complete assignment: one value index per variable, in schema order.
using Assignment = std::vector<int>;

/**
 * Ordered list of discrete variables. The order is fixed and defines both
 * the variable indices 0..n-1 and the mixed-radix encoding of assignments:
 * variable 0 is the most significant digit, the last variable varies
 * fastest. Immutable after construction.
 */
class Schema {
public:
    Schema() = default;
    explicit Schema(std::vector<Variable> variables);

    int size() const { return static_cast<int>(vars_.size()); }
    const std::string& name(int var) const { return vars_[var].name; }
    int cardinality(int var) const { return vars_[var].cardinality; }
    const std::vector<Variable>& variables() const { return vars_; }

    // Index of a named variable, or -1.
    int index_of_name(const std::string& name) const;

    // Number of complete assignments, saturated at 2^62 to avoid overflow.
    std::uint64_t joint_size() const { return joint_size_; }

    // Mixed-radix encoding of a complete assignment. Throws InputError on
    // wrong length or out-of-range values.
    std::uint64_t index_of(const Assignment& u) const;
    Assignment assignment_of(std::uint64_t index) const;

    // Checks length and value ranges without encoding.
    void validate(const Assignment& u) const;

    bool operator==(const Schema& other) const;
    bool operator!=(const Schema& other) const { return !(*this == other); }

private:
    std::vector<Variable> vars_;
    std::uint64_t joint_size_ = 1;
};

// Convenience factory: n variables named X0..X{n-1}, all of one cardinality.
Schema uniform_schema(int n_vars, int cardinality = 2);

}  // namespace bnsl
