#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace normord {

// Base of every error thrown by the library. The C API maps the concrete
// subclass onto a status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Argument outside an operation's documented domain.
class RangeError : public Error {
public:
    using Error::Error;
};

// Mathematical failure: pole hit, nonzero constant term, truncation too small.
class DomainError : public Error {
public:
    using Error::Error;
};

// Internal invariant broken (e.g. a closed form that must be integral was not).
class InvariantError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace normord
