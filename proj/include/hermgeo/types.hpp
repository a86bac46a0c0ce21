// Shared aliases and error types.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hermgeo {

using cxd = std::complex<double>;

inline constexpr cxd kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Metric not positive definite / not invertible where it was evaluated.
class DegenerateMetricError : public Error {
public:
    explicit DegenerateMetricError(const std::string& what) : Error(what) {}
};

// Point (or an FD stencil leg around it) leaves the chart domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Scalar field DSL: bad source text. 'offset' is a 1-based byte offset.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error("parse error at offset " + std::to_string(offset) + ": " + what),
          offset(offset) {}
    std::size_t offset;
};

// Scalar field DSL: evaluation hit a math domain problem (log of a
// non-positive value, division by zero, ...).
class EvalError : public Error {
public:
    explicit EvalError(const std::string& what) : Error(what) {}
};

}  // namespace hermgeo
