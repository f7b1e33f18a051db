#pragma once

#include <stdexcept>
#include <string>

namespace vsb {

/// Bad user input: config values, out-of-range arguments, malformed files.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown: singular systems, step underflow, bad roots.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vsb
