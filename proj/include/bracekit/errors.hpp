#pragma once

#include <stdexcept>
#include <string>

namespace bracekit {

// Bad arguments: dimension/modulus mismatches, malformed specs, invalid JSON.
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Exact-arithmetic failures: singular matrix, no unit pivot, non-halvable gram.
struct ArithmeticError : std::domain_error {
    explicit ArithmeticError(const std::string& what) : std::domain_error(what) {}
};

// An exhaustive routine was asked to run beyond its cap or budget.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A decision procedure could not reach a verdict (reported, never guessed).
struct Undecided : std::runtime_error {
    explicit Undecided(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bracekit
