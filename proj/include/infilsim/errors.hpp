#pragma once

#include <stdexcept>
#include <string>

namespace infilsim {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A user or organization id that does not exist in the graph at hand.
class LookupError : public Error {
public:
    using Error::Error;
};

/// A spec, config, or call argument that violates a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. The message carries a line (or byte) position.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure while writing outputs.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace infilsim
