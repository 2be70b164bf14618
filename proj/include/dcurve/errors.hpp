#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcurve {

// Argument outside the mathematical domain of an operation (e.g. t not in (0,1)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Quantity is not defined for the given input (empty subgroup, s_t = 0).
class UndefinedError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Net benefit value that no confusion table with the given prevalence can produce.
class InfeasibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Inputs that are individually valid but cannot be combined (different t, n or cohorts).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Bad input data. row is 1-based over data rows; 0 when not tied to a row.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t row = 0, std::string column = {})
        : std::runtime_error(what), row_(row), column_(std::move(column)) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

// Two algebraically equivalent routes disagreed. Always an implementation bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace dcurve
