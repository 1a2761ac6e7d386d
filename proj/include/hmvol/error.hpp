#pragma once

#include <stdexcept>
#include <string>

namespace hmvol {

/// Base class for every error raised by the library. Each error category
/// carries the process exit code the command line tool reports for it.
class Error : public std::runtime_error {
public:
    Error(const std::string& what, int exit_code)
        : std::runtime_error(what), exit_code_(exit_code) {}

    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

/// Malformed lattice expression. `offset` is the byte offset of the failure.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset), 2), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// An operation was called outside its domain (singular Gram, definite
/// lattice, odd lattice where an even one is required, ...).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what, 3) {}
};

/// A brute-force enumeration would exceed its configured cost bound.
class GuardError : public Error {
public:
    explicit GuardError(const std::string& what) : Error(what, 4) {}
};

/// An internal consistency check failed. Always a bug.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(what, 5) {}
};

}  // namespace hmvol
