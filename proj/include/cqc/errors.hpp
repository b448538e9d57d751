#pragma once

#include <stdexcept>
#include <string>

namespace cqc {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

// Columns of a would-be measurement basis fail orthonormality.
struct NotUnitary : Error {
  using Error::Error;
};

struct ParamOutOfRange : Error {
  using Error::Error;
};

struct InvalidDistribution : Error {
  using Error::Error;
};

struct NotAState : Error {
  using Error::Error;
};

struct MubViolation : Error {
  using Error::Error;
};

struct ConfigInvalid : Error {
  using Error::Error;
};

struct NonSquareDim : Error {
  using Error::Error;
};

// Raised when a provably nonnegative quantity comes out negative beyond
// the numerical-noise window. Signals a broken build, not bad input.
struct InternalConsistencyError : Error {
  using Error::Error;
};

// Malformed state file (syntax / missing fields / wrong element count).
// Content that parses but fails the state invariants throws NotAState.
struct StateParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace cqc
