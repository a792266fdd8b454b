#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracalc {

/// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument is a non-positive integer where the gamma function has a pole.
struct PoleError : Error {
    using Error::Error;
};

/// Evaluation or construction outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// Operator order outside the range an operation accepts.
struct OrderError : Error {
    using Error::Error;
};

/// Requested order is supported by no evaluation path.
struct UnsupportedOrder : Error {
    using Error::Error;
};

/// k-th symbolic derivative would leave a kernel-non-integrable term.
struct NonIntegrableDerivative : Error {
    using Error::Error;
};

/// Linear combination of functions anchored at different base points.
struct MixedBasePoints : Error {
    using Error::Error;
};

/// Closed-form rule applied under a base point where it does not hold.
struct BasePointError : Error {
    using Error::Error;
};

/// Jacobi weight exponent out of range (alpha <= -1).
struct InvalidWeight : Error {
    using Error::Error;
};

/// Expression text rejected by the grammar. Carries the byte offset of the
/// first offending character and what the parser expected there.
struct ParseError : Error {
    std::size_t offset;

    ParseError(std::size_t at, const std::string& expected)
        : Error("parse error at byte " + std::to_string(at) + ": expected " + expected),
          offset(at) {}
};

}  // namespace fracalc
