#pragma once

#include <stdexcept>
#include <string>

namespace randfib {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A model parameter violates one of the admissibility inequalities.
/// The message names the violated inequality and the offending value.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

/// An index points outside a computed table.
class IndexError : public Error {
public:
    using Error::Error;
};

/// A quantity left the representable double range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Requested computation is undefined at this parameter point
/// (e.g. the stationary law at eps in {0,1}).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Enumeration request too large to finish (cost 2^{n-1} patterns).
class TooLargeError : public Error {
public:
    using Error::Error;
};

/// An iterative solver hit its iteration or size cap.
class NoConvergenceError : public Error {
public:
    using Error::Error;
};

/// A root was requested where none exists (or none was bracketed).
class NoRootError : public Error {
public:
    using Error::Error;
};

/// Sample-based estimate collapsed onto too few effective samples.
class DegenerateSampleError : public Error {
public:
    using Error::Error;
};

/// Estimator input violates a positivity requirement.
class NonPositiveError : public Error {
public:
    using Error::Error;
};

} // namespace randfib
