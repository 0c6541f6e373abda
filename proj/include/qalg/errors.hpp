#pragma once

#include <stdexcept>
#include <string>

namespace qalg {

// Bad user input: unknown labels, malformed tables, non-composable chains.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured enumeration budget was exceeded.  Never silently truncate.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// The fixed-point engine ran out of its pass allowance.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A partial operation was applied outside its domain.  Carries the term
// (or element) that could not be evaluated.
struct EvalError : std::runtime_error {
    std::string where;
    EvalError(const std::string& msg, std::string where_)
        : std::runtime_error(msg + " at " + where_), where(std::move(where_)) {}
};

}  // namespace qalg
