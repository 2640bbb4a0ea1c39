#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mwt {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: unparseable files, degenerate point sets, crossing edge sets.
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Exceeded an exponential-cost guard (oracle enumeration).
class SizeGuardError : public InputError {
public:
    using InputError::InputError;
};

// A library invariant failed. Always a bug, never a valid outcome.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace mwt
