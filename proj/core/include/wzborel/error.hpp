#pragma once

#include <stdexcept>
#include <string>

namespace wzborel {

// Raised when an operation is called outside its mathematical domain
// (nonzero constant term, pole proximity, unsupported exponent, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Raised when an internal cross-check fails. Signals a bug, not bad input.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Raised by numerical routines that did not reach their tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wzborel
