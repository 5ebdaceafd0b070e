#ifndef CQSC_ERROR_HPP
#define CQSC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cqsc {

/// Base error for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad inputs: malformed files, shape mismatches, out-of-range parameters.
struct ValidationError : Error {
    using Error::Error;
};

/// Numerical failures: eigensolver non-convergence, not-PSD inputs.
struct NumericError : Error {
    using Error::Error;
};

} // namespace cqsc

#endif
