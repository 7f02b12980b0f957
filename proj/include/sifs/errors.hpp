#pragma once

#include <stdexcept>
#include <string>

namespace sifs {

/// Raised for malformed user-supplied input (files, configs, expressions).
/// The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an operation's precondition is violated (bad arguments,
/// mismatched spaces, out-of-range parameters).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace sifs
