#pragma once

#include <stdexcept>

namespace bnsl {

// Raised when an argument violates an operation's preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a request exceeds a configured size limit (dense-table
// capacity, DAG enumeration limit, search caps).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bnsl
