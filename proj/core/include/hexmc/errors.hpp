#pragma once

#include <stdexcept>
#include <string>

namespace hexmc {

/// Invalid user-supplied configuration or parameter value.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: series non-convergence, boundary maximizer,
/// threshold search exhausted, degenerate likelihoods.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hexmc
