#pragma once

#include <stdexcept>
#include <string>

namespace axiotherm {

/// Base class for all engine errors. Input-contract violations (bad arguments,
/// malformed scenarios) throw std::invalid_argument or SchemaError; everything
/// that can only be detected while computing derives from Error.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A state or model referenced a model_id that is not registered.
class UnknownModelError : public Error {
 public:
  explicit UnknownModelError(const std::string& what) : Error(what) {}
};

/// An energy or target left the admissible domain (E <= e_ground, infeasible
/// total energy, entropy target below the ground-state branch).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Integration interval touches the ground energy where 1/T diverges.
class NonIntegrableEndpointError : public DomainError {
 public:
  explicit NonIntegrableEndpointError(const std::string& what) : DomainError(what) {}
};

/// A meter cannot absorb or supply the required entropy change without its
/// energy hitting the ground state.
class MeterRangeError : public DomainError {
 public:
  explicit MeterRangeError(const std::string& what) : DomainError(what) {}
};

/// A model broke a structural requirement mid-computation (non-monotone
/// fundamental relation, non-positive temperature).
class InvariantViolationError : public Error {
 public:
  explicit InvariantViolationError(const std::string& what) : Error(what) {}
};

/// Root bracketing failed: the target is not straddled inside the search range.
class BracketError : public Error {
 public:
  explicit BracketError(const std::string& what) : Error(what) {}
};

/// An iterative kernel exhausted its refinement budget before meeting tolerance.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(what) {}
};

/// Operation requires a reversible record but received an irreversible one,
/// or vice versa.
class ReversibilityError : public Error {
 public:
  explicit ReversibilityError(const std::string& what) : Error(what) {}
};

/// Records passed to compose() do not chain end-state to start-state.
class CompositionError : public Error {
 public:
  explicit CompositionError(const std::string& what) : Error(what) {}
};

/// Scenario or model JSON violates the expected schema. Carries a field path
/// so CLI diagnostics can point at the offending entry.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace axiotherm
