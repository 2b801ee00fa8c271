#pragma once

#include <stdexcept>
#include <string>

namespace kqent {

/// Base class for failures that map to dedicated CLI exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The submanifold parametrization is singular at a parameter point
/// (zero tangent, vanishing metric Gram determinant, zero radius, ...).
class DegenerateSubmanifoldError : public Error {
public:
    using Error::Error;
};

/// The assembled state is degenerate (zero trace, all-zero Gram).
class DegenerateStateError : public Error {
public:
    using Error::Error;
};

/// A numerical computation produced a non-finite value or violated a
/// hard spectral bound.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The requested operation is only defined at other dimensions
/// (e.g. Wootters concurrence outside 2x2).
class UnsupportedDimensionError : public Error {
public:
    using Error::Error;
};

} // namespace kqent
