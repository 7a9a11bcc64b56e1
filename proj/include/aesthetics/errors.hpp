#pragma once

#include <stdexcept>
#include <string>

namespace aesthetics {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Input bytes do not decode as a supported or well-formed format.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Serialized artifact has the wrong version, keys or shapes.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Arguments violate an operation's preconditions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace aesthetics
