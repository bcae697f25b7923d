#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uopt {

/// Raised when a caller breaks a documented precondition (overlapping
/// interval, key increase, stale handle, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A handle was presented to an arena that did not issue it.
class UsageFault : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A data structure detected that its own internal invariants are broken.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class EmptyHeapError : public std::runtime_error {
public:
    EmptyHeapError() : std::runtime_error("operation on an empty heap") {}
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace uopt
