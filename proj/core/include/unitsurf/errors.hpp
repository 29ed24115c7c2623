#pragma once

#include <stdexcept>
#include <string>

namespace unitsurf {

// Base of every failure raised by the library. Subclasses name the
// contract that was violated so callers (and the CLI exit-code map) can
// dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input-side violations: bad parameters, malformed files, misuse.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Numeric failures: the computation could not reach a trustworthy result.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

// A point with z <= |cos(theta)| was handed to a field evaluation.
class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// theta' vanished where a formula divides by it.
class SlopeZeroError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class RangeError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class StepUnderflow : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class SeedInvalid : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class NotOnAxis : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidLambda : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class BracketFailure : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class NotPeriodic : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NoSignChange : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class SpecInvalid : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class TooFewSamples : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DegenerateProfile : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class SinkError : public Error {
 public:
  using Error::Error;
};

}  // namespace unitsurf
