#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace scissors {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Formats a double compactly (3 significant digits) for error messages,
/// keeping tiny magnitudes visible where std::to_string would print 0.000000.
inline std::string display_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return std::string(buf);
}

/// A dimension argument was non-positive or otherwise unusable.
struct InvalidDimension : Error {
  using Error::Error;
};

/// Two objects that must share a Fock dimension do not.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// The requested cutoffs drop more probability mass than the budget allows.
struct TruncationError : Error {
  using Error::Error;
};

/// The requested herald outcome has (numerically) zero probability, so no
/// conditional state exists.
struct ZeroProbabilityHerald : Error {
  using Error::Error;
};

/// The numerical-unitary reference construction lost unitarity beyond
/// tolerance on the populated subspace.
struct OracleFailure : Error {
  using Error::Error;
};

/// The metric is undefined for the given state (e.g. Mandel Q on vacuum).
struct UndefinedMetric : Error {
  using Error::Error;
};

}  // namespace scissors
