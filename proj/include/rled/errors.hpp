#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rled {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed RLE text. `offset` is the byte position of the offending token.
struct ParseError : Error {
    ParseError(std::size_t offset, const std::string& what)
        : Error("parse error at byte " + std::to_string(offset) + ": " + what),
          offset(offset) {}
    std::size_t offset;
};

// An argument violates an operation's precondition (mismatched domains,
// junction values, monotonicity, ...).
struct DomainError : Error {
    using Error::Error;
};

// A coordinate falls outside a curve's domain, or a width is negative.
struct RangeError : Error {
    using Error::Error;
};

// A structural invariant does not hold; indicates a caller contract breach
// (illegal gradient, crossing not single) or an internal bug.
struct InvariantError : Error {
    using Error::Error;
};

// A resource guard refused to run (decompression cap, dense-table cap).
struct GuardError : Error {
    using Error::Error;
};

}  // namespace rled
