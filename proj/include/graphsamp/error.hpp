#pragma once

#include <stdexcept>
#include <string>

namespace graphsamp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input or configuration: bad edges, inconsistent sizes, invalid parameters.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A numerical precondition failed: disconnected graph, rank-deficient
/// sampling matrix, singular precision.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read, parsed or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace graphsamp
