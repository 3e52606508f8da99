#pragma once

#include <stdexcept>
#include <string>

namespace tightree {

/// An operation was called outside its contract (bad parameters, unmet hypotheses).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A `.hg` file could not be parsed; `line()` is 1-based, 0 when not line-specific.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message)
        , line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A search that should provably succeed came back empty. Never swallowed.
class InternalDiagnostic : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tightree
