#pragma once

#include <stdexcept>
#include <string>

namespace dmi {

/// A precondition or type invariant was violated by the caller.
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A true evaluation was requested after the budget was spent.
struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Covariance factorization failed even after jitter escalation.
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No usable tangent direction exists at the queried point.
struct EmptyTangent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw ContractViolation(message);
    }
}

} // namespace dmi
