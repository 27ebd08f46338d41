#pragma once

#include <stdexcept>
#include <string>

namespace lanpower {

/// Simulation hit an invalid state (e.g. conditional variance non-positive).
class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric routine failed to converge or produced a non-finite value.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Sample too small for the requested estimate.
class InsufficientDataError : public std::runtime_error {
public:
    explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

/// Regression design is degenerate (e.g. all lagged values zero).
class DegenerateDesignError : public std::runtime_error {
public:
    explicit DegenerateDesignError(const std::string& what) : std::runtime_error(what) {}
};

/// Gradient component below tolerance in the vector modified-estimate construction.
class DegenerateComponentError : public std::runtime_error {
public:
    DegenerateComponentError(const std::string& what, int component)
        : std::runtime_error(what), component(component) {}
    int component;
};

/// Test variance is non-positive.
class DegenerateTestError : public std::runtime_error {
public:
    explicit DegenerateTestError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lanpower
