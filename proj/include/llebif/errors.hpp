#pragma once

#include <stdexcept>
#include <string>

namespace llebif {

// Base class for every failure this library reports on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Curve parameter outside (-1+guard, 1-guard).
struct DomainError : Error {
  using Error::Error;
};

// Invalid sizes / tolerances / divisor combinations.
struct ConfigError : Error {
  using Error::Error;
};

// A root or eigenvalue crossing failed a numerical simplicity check,
// or a root count came out odd.
struct GenericityViolation : Error {
  using Error::Error;
};

// The eigenvalue relation's denominator d*l^2 + sign(d) vanished for a mode.
struct ResonantMode : Error {
  using Error::Error;
};

// A zero eigenvalue was detected where the Morse count must be clean.
struct DegeneratePoint : Error {
  using Error::Error;
};

// Index jumps are undefined where the detuning derivative vanishes.
struct TurningPointBifurcation : Error {
  using Error::Error;
};

// The adaptive one-sided offset underflowed without the counts stabilizing.
struct NoStableEps : Error {
  using Error::Error;
};

// q outside the window where the symmetric continuum meets exactly one pair.
struct OutOfWindow : Error {
  using Error::Error;
};

// find_primary_points(q) did not return exactly two roots.
struct MissingPair : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct SingularJacobian : Error {
  using Error::Error;
};

// A claim of the counterexample verification suite failed.
struct ReportedFailure : Error {
  using Error::Error;
};

}  // namespace llebif
