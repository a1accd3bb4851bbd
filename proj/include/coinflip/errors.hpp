#pragma once

#include <stdexcept>
#include <string>

namespace coinflip {

// Register size / dimension limit violations.
struct SizingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Convergence failures, certification failures, internal consistency breaks.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operator construction self-test failures (fast path disagreeing with oracle).
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid cheating strategies (constraint or completeness violations).
struct StrategyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input at the CLI surface (exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}
