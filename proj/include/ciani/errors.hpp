#pragma once

#include <stdexcept>
#include <string>

namespace ciani {

// Exit-code contract of the command line tool:
//   0 success, 1 domain error, 2 usage error, 3 indeterminate classification.
enum ExitCode : int {
    kExitOk = 0,
    kExitDomain = 1,
    kExitUsage = 2,
    kExitIndeterminate = 3,
};

// Base error. `code()` is a stable machine-readable identifier, one per
// failure family, so CLI consumers can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Malformed textual input; `position` is a 0-based offset into the input.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error("parse", what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// Input outside the mathematical domain of the operation
// (inhomogeneous form, matrix not in S, non-symplectic matrix, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
    DomainError(std::string code, const std::string& what)
        : Error(std::move(code), what) {}
};

// Valid input that this build deliberately does not handle
// (e.g. period computation for curves without real 2-torsion).
class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what)
        : Error("unsupported", what) {}
};

// Numerical failure at the requested precision (singular system,
// non-convergent iteration, positive-definiteness check failure).
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error("numeric", what) {}
};

// Command-line usage problems.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error("usage", what) {}
};

}  // namespace ciani
