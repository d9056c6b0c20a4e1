#pragma once

#include <stdexcept>
#include <string>

namespace plates {

// Base for all recoverable library errors. The CLI maps ValidationError and
// its subclasses to exit code 2 and SolverFailure-type errors to exit code 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct SingularReduction : ValidationError {
  using ValidationError::ValidationError;
};

struct ZeroDirection : ValidationError {
  using ValidationError::ValidationError;
};

struct NotRankOne : ValidationError {
  using ValidationError::ValidationError;
};

struct JacobianSignError : ValidationError {
  using ValidationError::ValidationError;
};

struct LevelTooDeep : ValidationError {
  using ValidationError::ValidationError;
};

struct IncommensurateGrid : ValidationError {
  using ValidationError::ValidationError;
};

struct DomainTooSmall : ValidationError {
  using ValidationError::ValidationError;
};

struct ResolutionError : ValidationError {
  using ValidationError::ValidationError;
};

struct SqrtDomainError : ValidationError {
  using ValidationError::ValidationError;
};

struct SolverFailure : Error {
  explicit SolverFailure(const std::string& msg, double residual = 0.0)
      : Error(msg), residual(residual) {}
  double residual;
};

struct NonConvergence : SolverFailure {
  explicit NonConvergence(const std::string& msg, double violation = 0.0)
      : SolverFailure(msg, violation), constraint_violation(violation) {}
  double constraint_violation;
};

struct StepTooLarge : Error {
  explicit StepTooLarge(const std::string& msg, double drift = 0.0)
      : Error(msg), drift(drift) {}
  double drift;
};

}  // namespace plates
