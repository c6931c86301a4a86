#pragma once

#include <stdexcept>
#include <string>

namespace fiberlab {

// Bad or inconsistent user-facing configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Rejection sampling exhausted its proposal budget without a single accept
// (CLI exit code 3).
class StarvationError : public std::runtime_error {
public:
    explicit StarvationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-finite intermediate, unmet convergence target,
// degenerate statistics (CLI exit code 4).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fiberlab
