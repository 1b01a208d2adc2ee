#pragma once

#include <stdexcept>
#include <string>

namespace padist {

/// Malformed or inconsistent input: bad prime, prime mismatch, digit out of
/// range, a rational that is not a p-adic integer.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// An enumeration would exceed the configured ball budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace padist
