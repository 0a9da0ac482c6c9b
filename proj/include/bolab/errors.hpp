#pragma once

#include <stdexcept>
#include <string>

namespace bolab {

// Common base so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument values: invalid p for a Lebesgue norm, M < 1 on a divided
// multiplier, mismatched grids, odd oversampling factors, ...
struct ParamError : Error {
    explicit ParamError(const std::string& msg) : Error(msg) {}
};

// A mathematical precondition on the *data* failed: nonzero mean where a zero
// mean is required, complex data where real data is required, ...
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Time stepping produced a non-finite value.
struct InstabilityError : Error {
    explicit InstabilityError(const std::string& msg) : Error(msg) {}
};

// Malformed config file / CLI usage. CLI maps this to exit code 2.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// A file could not be opened or written (report emission, trajectory dumps).
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace bolab
