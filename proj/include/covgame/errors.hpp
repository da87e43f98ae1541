#ifndef COVGAME_ERRORS_HPP
#define COVGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace covgame {

/// Bad argument or violated precondition (unknown player, power out of range, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scenario / deviation file could not be parsed. Carries the 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A combinatorial sweep would exceed its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature did not reach its tolerance within the refinement cap.
class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(double previous, double last)
      : std::runtime_error("quadrature did not converge: last estimates " + std::to_string(previous) +
                           " and " + std::to_string(last)),
        previous_(previous),
        last_(last) {}
  double previous_estimate() const noexcept { return previous_; }
  double last_estimate() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

/// Generic numerical failure (infeasible program, failed self-check).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Target lies outside the achievable (sampled) utility region.
class Infeasible : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Player gains nothing from cooperation; excluded from the discount threshold.
class DegeneratePlayer : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Monitoring graph cannot guarantee deviator identification.
class GuaranteeUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace covgame

#endif  // COVGAME_ERRORS_HPP
