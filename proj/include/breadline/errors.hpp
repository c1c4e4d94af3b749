#pragma once

#include <stdexcept>
#include <string>

namespace breadline {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid parameter, data, or configuration value.
struct ParameterError : Error {
    using Error::Error;
};

// A household cannot afford the subsistence food bundle at the given
// price and expenditure level.
struct SubsistenceError : Error {
    using Error::Error;
};

// An iterative routine exhausted its budget without converging.
struct ConvergenceError : Error {
    using Error::Error;
};

// Root bracketing failed (no sign change over the admissible interval).
struct BracketError : Error {
    using Error::Error;
};

// Objects that must share primitives (grid, preferences, income process)
// were built from different ones.
struct MismatchError : Error {
    using Error::Error;
};

// Stationary mass accumulates in the top asset node of a caller-supplied
// grid; the caller must enlarge it and re-solve.
struct GridTailError : Error {
    using Error::Error;
};

// File, parse, or schema problem on configs, CSV inputs, or snapshots.
struct IoError : Error {
    using Error::Error;
};

}  // namespace breadline
