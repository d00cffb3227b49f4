#pragma once

#include <stdexcept>
#include <string>

namespace emdk {

/// Raised when an input violates a documented precondition (bad degree, non-unit
/// velocity, non-self-adjoint constitutive tensor, malformed scenario...).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a computation cannot produce a trustworthy number (degenerate lifted
/// metric, non-finite samples, failed convergence reported as an error).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace emdk
