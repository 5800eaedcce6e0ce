#pragma once

#include <stdexcept>
#include <string>

namespace netlearn {

// Bad user input: malformed networks, out-of-range ids, invalid parameters.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested computation exceeds its configured budget (e.g. equilibrium
// enumeration over too large a profile space).
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal invariant was violated at runtime, e.g. the iterated
// best-response sweep lost monotonicity.  Surfaced, never swallowed.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace netlearn
