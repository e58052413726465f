#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace steadycert {

// Mixing values from different variable contexts, or mismatched lengths.
struct ContextError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input outside an operation's mathematical domain (zero polynomial,
// non-positive parameter, denominator vanishing, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A resource cap was hit. The computation is abandoned, never truncated.
struct BudgetError : std::runtime_error {
    std::uint64_t pairs_processed = 0;
    double seconds_elapsed = 0.0;
    BudgetError(const std::string& what, std::uint64_t pairs, double secs)
        : std::runtime_error(what), pairs_processed(pairs), seconds_elapsed(secs) {}
};

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace steadycert
