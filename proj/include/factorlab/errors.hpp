#pragma once

#include <stdexcept>
#include <string>

namespace factorlab {

/// Bad user input: unparsable literal, mismatched groups, violated precondition.
struct InvalidArgument : std::invalid_argument {
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// A search or enumeration exceeded its configured budget or cap.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// An instance oracle broke the factorization-engine contract.
struct OracleContractViolation : std::logic_error {
    explicit OracleContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace factorlab
