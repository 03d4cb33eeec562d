#include "bnsl/schema.hpp"

#include <unordered_set>

#include "bnsl/errors.hpp"

namespace bnsl {

namespace {
constexpr std::uint64_t kJointSizeSaturation = 1ull << 62;
}

Schema::Schema(std::vector<Variable> variables) : vars_(std::move(variables)) {
    std::unordered_set<std::string> seen;
    for (const Variable& v : vars_) {
        if (v.name.empty()) {
            throw InputError("schema: variable names must be non-empty");
        }
        if (v.cardinality < 2) {
            throw InputError("schema: variable '" + v.name + "' has cardinality " +
                             std::to_string(v.cardinality) + ", need >= 2");
        }
        if (!seen.insert(v.name).second) {
            throw InputError("schema: duplicate variable name '" + v.name + "'");
        }
    }
    joint_size_ = 1;
    for (const Variable& v : vars_) {
        const std::uint64_t card = static_cast<std::uint64_t>(v.cardinality);
        if (joint_size_ > kJointSizeSaturation / card) {
            joint_size_ = kJointSizeSaturation;
            break;
        }
        joint_size_ *= card;
    }
}

int Schema::index_of_name(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
        if (vars_[i].name == name) return i;
    }
    return -1;
}

void Schema::validate(const Assignment& u) const {
    if (static_cast<int>(u.size()) != size()) {
        throw InputError("assignment has " + std::to_string(u.size()) +
                         " values, schema has " + std::to_string(size()) + " variables");
    }
    for (int i = 0; i < size(); ++i) {
        if (u[i] < 0 || u[i] >= vars_[i].cardinality) {
            throw InputError("value " + std::to_string(u[i]) + " out of range for variable '" +
                             vars_[i].name + "' (cardinality " +
                             std::to_string(vars_[i].cardinality) + ")");
        }
    }
}

std::uint64_t Schema::index_of(const Assignment& u) const {
    validate(u);
    std::uint64_t index = 0;
    for (int i = 0; i < size(); ++i) {
        index = index * static_cast<std::uint64_t>(vars_[i].cardinality) +
                static_cast<std::uint64_t>(u[i]);
    }
    return index;
}

Assignment Schema::assignment_of(std::uint64_t index) const {
    Assignment u(static_cast<std::size_t>(size()));
    for (int i = size() - 1; i >= 0; --i) {
        const std::uint64_t card = static_cast<std::uint64_t>(vars_[i].cardinality);
        u[i] = static_cast<int>(index % card);
        index /= card;
    }
    return u;
}

bool Schema::operator==(const Schema& other) const {
    if (size() != other.size()) return false;
    for (int i = 0; i < size(); ++i) {
        if (vars_[i].name != other.vars_[i].name ||
            vars_[i].cardinality != other.vars_[i].cardinality) {
            return false;
        }
    }
    return true;
}

Schema uniform_schema(int n_vars, int cardinality) {
    std::vector<Variable> vars;
    vars.reserve(static_cast<std::size_t>(n_vars));
    for (int i = 0; i < n_vars; ++i) {
        vars.push_back({"X" + std::to_string(i), cardinality});
    }
    return Schema(std::move(vars));
}

}  // namespace bnsl
