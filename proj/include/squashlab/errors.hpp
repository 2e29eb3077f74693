#pragma once

#include <stdexcept>
#include <string>

namespace squashlab {

// Parameter outside its documented domain (bad efficiency, negative L, ...).
// The CLI maps these to exit status 1.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that cannot proceed for numerical/physical reasons
// (loop resonance, diverging simulation, degenerate steady state, ...).
// The CLI maps these to exit status 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundedGainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LoopResonanceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InstabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RateExtractionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateSteadyStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace squashlab
