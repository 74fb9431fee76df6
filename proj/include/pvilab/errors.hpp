#pragma once

#include <stdexcept>
#include <string>

namespace pvi {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Loop/basepoint geometry cannot be realized (degenerate puncture layout).
struct GeometryError : Error {
    explicit GeometryError(const std::string& what) : Error(what) {}
};

// Input outside an operation's domain (zero denominator, off-overlap chart point, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// A numeric routine failed to converge within its budget.
struct NumericError : Error {
    explicit NumericError(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace pvi
