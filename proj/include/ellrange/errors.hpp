// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ellrange {

// Base of every error raised by the library. The CLI maps the three
// categories below onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failures: eigen-solvers, singular systems, stalled solvers.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Inputs that violate an operation's precondition (non-generic, not a
// contraction, not Hermitian, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, int iterations)
      : NumericalError(what + " (iterations: " + std::to_string(iterations) + ")"),
        iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

class EigenvalueClusterError : public PreconditionError {
 public:
  EigenvalueClusterError(const std::string& what, double min_gap)
      : PreconditionError(what), min_gap_(min_gap) {}
  double min_gap() const noexcept { return min_gap_; }

 private:
  double min_gap_;
};

class SingularError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularResolventError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SpectrumOutsideError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NonGenericError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class CommutationError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SqrtResidualError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotPositiveError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotHermitianError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotContractionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ContractionViolationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DefectSqrtError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GerminatorInvalidError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SolverStalledError : public NumericalError {
 public:
  SolverStalledError(const std::string& what, int iterations, double residual)
      : NumericalError(what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

// Raised by pipelines (ando_factor, dp_extend) when the inclusion fails.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Malformed input files (matrix JSON, coefficient lists).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ellrange
