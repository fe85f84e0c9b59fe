#pragma once

#include <stdexcept>
#include <string>

namespace ectl {

// Base class for all errors raised by the library.  Every error carries a
// human-readable message; the CLI maps error categories to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- polyalg ----
struct DivisionByZeroPolynomial : Error {
    using Error::Error;
};

// ---- canon ----
struct NotSquare : Error {
    using Error::Error;
};
struct NotMonic : Error {
    using Error::Error;
};
struct DegreeZero : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    using Error::Error;
};
struct NotControllable : Error {
    using Error::Error;
};
struct SearchExhausted : Error {
    using Error::Error;
};

// ---- ensemble ----
struct MalformedShape : Error {
    using Error::Error;
};
struct NonTriangular : Error {
    using Error::Error;
};
struct EmptyInterval : Error {
    using Error::Error;
};
struct ConstantEigenfunction : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};

// ---- decide ----
struct NotSingleInput : Error {
    using Error::Error;
};
struct PointwiseUncontrollable : Error {
    using Error::Error;
};
struct NotControllableAtEta : Error {
    using Error::Error;
};
// Raised when an exact canonical form is requested at a spectral point whose
// reparameterized data is not exactly rational (irrational preimages with a
// non-constant control row).  Exact similarity transforms cannot be computed
// from certified enclosures, and we never substitute midpoints.
struct NonRationalData : Error {
    using Error::Error;
};

// ---- steer ----
struct ShapeMismatch : Error {
    using Error::Error;
};

// ---- io/cli ----
struct ParseError : Error {
    using Error::Error;
};

// Internal invariant violations (algebra that "cannot fail" by theory).
// Raised instead of silently returning wrong results.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace ectl
