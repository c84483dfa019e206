#ifndef QHE_ERRORS_HPP
#define QHE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qhe {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments (violated preconditions, invalid domain types).
struct InvalidInput : Error {
    using Error::Error;
};

// Requested evaluation outside the validity domain of a closed form
// (e.g. non-positive radicand in the weak-coupling sound velocity).
struct DomainError : Error {
    using Error::Error;
};

// Iterative solver failed to reach the requested tolerance.
struct SolverError : Error {
    SolverError(const std::string& msg, double residual)
        : Error(msg), last_residual(residual) {}
    double last_residual;
};

// A limiting case that has a closed form but no iterative solution
// (c = 0 free bosons).
struct UnsupportedLimit : Error {
    using Error::Error;
};

// Enumeration exceeded the configured hard cap.
struct ResourceLimit : Error {
    ResourceLimit(const std::string& msg, std::size_t n)
        : Error(msg), count(n) {}
    std::size_t count;
};

// Momentum grid unable to satisfy the tail condition.
struct GridError : Error {
    using Error::Error;
};

// Chemical-potential (or other) bracketing inversion failed.
struct InversionError : Error {
    using Error::Error;
};

// Entropy matching could not bracket the target.
struct MatchingError : Error {
    using Error::Error;
};

// Cycle parameters yield no net heat intake (Q2 <= 0).
struct NotAnEngine : Error {
    using Error::Error;
};

}  // namespace qhe

#endif
