#pragma once

#include <stdexcept>
#include <string>

namespace fluxqed {

// Bad input: non-Hermitian matrices, mismatched dimensions, out-of-range parameters.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Iterative routine failed to converge within its sweep budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A closed-form identity that must hold was violated numerically.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Post-selection on an outcome with (numerically) zero probability.
class UnreachableOutcomeError : public std::runtime_error {
public:
    explicit UnreachableOutcomeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fluxqed
