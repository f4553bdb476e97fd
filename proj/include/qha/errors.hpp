#pragma once

#include <stdexcept>
#include <string>

namespace qha {

// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Gamma function evaluated at a nonpositive integer.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Invalid model parameters (e.g. nu <= n).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

// Integrand declared with non-integrable endpoint exponents, or a profile
// without the required integrability flag.
class NonIntegrableError : public Error {
public:
    explicit NonIntegrableError(const std::string& msg) : Error(msg) {}
};

// Quadrature failed to meet the requested tolerance. Carries the best
// estimate and its error bound.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& msg, double estimate, double error_bound)
        : Error(msg), estimate(estimate), error_bound(error_bound) {}
    double estimate;
    double error_bound;
};

// Hypergeometric series failed to converge within the term cap.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// A calibration identity failed for every candidate convention.
class CalibrationError : public Error {
public:
    explicit CalibrationError(const std::string& msg) : Error(msg) {}
};

// Malformed job configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// h_hat(lambda) below the degeneracy threshold in a T^{lambda,nu} division.
class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

}  // namespace qha
