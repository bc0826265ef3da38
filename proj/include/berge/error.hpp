#pragma once

#include <stdexcept>
#include <string>

namespace berge {

/// Bad input: malformed files, invalid parameters, guard violations.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search ran out of its node budget before reaching a verdict.
class BudgetExhausted : public std::runtime_error {
public:
    explicit BudgetExhausted(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace berge
