#pragma once

#include <stdexcept>
#include <string>

namespace frct {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed header, bad magic, unexpected field values.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Image with a maxval other than 255.
class UnsupportedDepthError : public FormatError {
public:
    using FormatError::FormatError;
};

/// Unreadable/unwritable files and truncated payloads.
class IoError : public Error {
public:
    using Error::Error;
};

/// Caller violated an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Key fingerprint in a container does not match the supplied key.
class WrongKeyError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}

}  // namespace detail
}  // namespace frct
