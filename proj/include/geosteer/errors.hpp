#pragma once

#include <stdexcept>
#include <string>

namespace geosteer {

/// Base class for all library failures that map to CLI exit code 1.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested frame name is not in the registry.
class UnknownFrameError : public Error {
  public:
    using Error::Error;
};

/// Frame evaluation refused: the domain predicate failed or the Gram
/// determinant dropped below the degeneracy threshold.
class DegenerateFrameError : public Error {
  public:
    DegenerateFrameError(const std::string& msg, double q1, double q2, double gram)
        : Error(msg), q1(q1), q2(q2), gram_det(gram) {}

    double q1;
    double q2;
    double gram_det;
};

/// Input outside the mathematical domain of an operation (e.g. the closed
/// form left the |u1| <= 1 regime, or degenerate closed-form parameters).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A formula's denominator vanished at the evaluation point.
class SingularityError : public Error {
  public:
    using Error::Error;
};

/// Integration aborted mid-flow; `t_fail` is the time of the failure.
class IntegrationError : public Error {
  public:
    IntegrationError(const std::string& msg, double t) : Error(msg), t_fail(t) {}

    double t_fail;
};

/// Step budget exhausted before reaching the end of the horizon.
class MaxStepsError : public IntegrationError {
  public:
    using IntegrationError::IntegrationError;
};

}  // namespace geosteer
