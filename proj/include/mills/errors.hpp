#pragma once

#include <stdexcept>

namespace mills {

// Input outside an operation's domain (t <= 0 where a bracket is undefined, etc).
class DomainError : public std::domain_error {
    using std::domain_error::domain_error;
};

// A provably integral quantity failed its divisibility check. Signals a bug
// in a formula transcription, never bad input.
class IntegralityViolation : public std::logic_error {
    using std::logic_error::logic_error;
};

// A table entry was requested through the recurrence before its lower rows exist.
class MissingDependency : public std::logic_error {
    using std::logic_error::logic_error;
};

// The requested error bound could not be met within the iteration ceiling.
class PrecisionUnachievable : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A truncated series/sum failed to settle below its target.
class NonConvergence : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Combinatorial instance above the brute-force guard.
class InstanceTooLarge : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace mills
