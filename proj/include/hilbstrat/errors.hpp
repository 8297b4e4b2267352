#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hilbstrat {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed partition input (bad arity, negative coordinates, duplicates).
class InvalidPartition : public Error {
public:
    using Error::Error;
};

class NonMonotone : public InvalidPartition {
public:
    using InvalidPartition::InvalidPartition;
};

class NonPositiveEntry : public InvalidPartition {
public:
    using InvalidPartition::InvalidPartition;
};

/// A brute-force enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t required)
        : Error(what), required_(required) {}

    /// Size of the enumeration that was refused (saturates at UINT64_MAX),
    /// or the number of items produced before giving up.
    std::uint64_t required() const noexcept { return required_; }

private:
    std::uint64_t required_;
};

class NotCommuting : public Error {
public:
    using Error::Error;
};

class NoPoints : public Error {
public:
    using Error::Error;
};

class NonUnitConstantTerm : public Error {
public:
    using Error::Error;
};

/// Series operands carry different truncation orders.
class TruncationMismatch : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace hilbstrat
