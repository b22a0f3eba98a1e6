#pragma once

#include <stdexcept>
#include <string>

namespace triuni {

/// Raised when an input fails a contract check (bad sizes, non-unitary
/// gates, repeated sites, ...). The CLI maps this to exit code 1.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds what the dense backends can hold
/// (too many qubits for a 2^L state or 4^L operator). Exit code 2.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace triuni
