#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace domopt {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclass onto its exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad vertex, bad family
/// parameters, edge not present, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed textual input. `offset` is the byte position of the problem.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), message_(what), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }
    /// The description without the position suffix.
    const std::string& message() const noexcept { return message_; }

private:
    std::string message_;
    std::size_t offset_;
};

/// A workload exceeds a configured size cap (order cap for counting,
/// permutation-search bound for canonical labeling, ...).
class CapExceeded : public Error {
public:
    using Error::Error;
};

} // namespace domopt
