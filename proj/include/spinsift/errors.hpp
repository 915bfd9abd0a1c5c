#pragma once

#include <stdexcept>
#include <string>

namespace spinsift {

// Bad user input: malformed files, length mismatches, out-of-range options.
// The CLI maps this to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Problem size exceeds an enumeration or memory bound.
struct CapacityError : ValidationError {
    using ValidationError::ValidationError;
};

// A numerical procedure failed to converge or produced non-finite values.
// The CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spinsift
