#pragma once

#include <stdexcept>
#include <string>

namespace evshift {

// Base of every error the library raises. The CLI maps each subtype to an exit code.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent configuration (missing keys, bad year ranges, ...).
class ConfigError : public Error
{
public:
    using Error::Error;
};

// Input series or profiles that violate their invariants.
class DataError : public Error
{
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation (negative factor, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

class LookupError : public Error
{
public:
    using Error::Error;
};

// The LP solver failed, or a solved plan broke a post-condition.
class SolverError : public Error
{
public:
    using Error::Error;
};

} // namespace evshift
