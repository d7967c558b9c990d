// Shared value types and the error hierarchy used across the nbbd library.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nbbd {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation at (or numerically on top of) a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A requested accuracy cannot be reached within the configured budget.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature ran out of panels before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Two points that must stay apart (an evaluation point and a zero) collided.
class CollisionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed input data; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A linear solve or fit could not be carried out (singular or degenerate).
class SolverError : public Error {
 public:
  using Error::Error;
};

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace nbbd
