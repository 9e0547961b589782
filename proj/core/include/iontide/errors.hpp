#pragma once

#include <stdexcept>
#include <string>

namespace iontide {

/// Invalid physical argument (non-positive frequency, negative noise density, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A denominator hit a parametric resonance.
class ResonanceError : public std::runtime_error {
public:
    explicit ResonanceError(const std::string& what) : std::runtime_error(what) {}
};

/// State does not fit in the grid (margins, extent).
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// Grid cannot represent the requested dynamics (momentum resolution, ...).
class GridError : public std::runtime_error {
public:
    explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical guardrail tripped (norm drift, lost positive definiteness, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed scenario configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace iontide
