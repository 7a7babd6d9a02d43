#pragma once

#include <stdexcept>
#include <string>

namespace lpx {

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not reach its contract in floating point
/// (bracket failure, singular elimination, residual above tolerance).
class NumericalBreakdown : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

}  // namespace detail
}  // namespace lpx
