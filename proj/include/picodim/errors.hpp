#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace picodim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument to a constructor or operation (T < 2, non-increasing stages, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A computation would exceed a configured size cap.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

/// Syntax error in a descriptor, polynomial or label; carries the byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Certified comparison stayed undecided at the top of the precision ladder.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

/// A certificate expected to hold was refuted.
class CertificationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace picodim
