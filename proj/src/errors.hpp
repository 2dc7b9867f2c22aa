#pragma once

#include <stdexcept>
#include <string>

namespace swing {

// Input text that does not parse (JSON syntax, missing/ill-typed fields).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input outside the mathematical domain of an operation
// (disconnected graph where connectivity is required, D0 outside (0, pi), ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at run time (non-finite state during integration).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swing
