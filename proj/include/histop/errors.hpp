#pragma once

#include <stdexcept>
#include <string>

namespace histop {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Degenerate simplex, bad face index, singular affine map.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Moment exponent outside the integrable range, or a singular density
/// fed to plain Gauss quadrature.
class IntegrabilityError : public Error {
public:
    using Error::Error;
};

/// Basis construction failed (rank deficiency, empty kernel, zero residual).
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// Moment system is singular where the method requires invertibility.
class UnisolvenceError : public Error {
public:
    using Error::Error;
};

/// Generic numerical failure (non-symmetric input, singular Gram, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration (CLI layer).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace histop
