#pragma once

#include <stdexcept>
#include <string>

namespace qdepth {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that does not match the documented schema or preconditions.
class MalformedInput : public Error {
public:
    using Error::Error;
};

/// A configured size limit (group order, tensor dimension, ...) was hit.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& cap, std::size_t limit, const std::string& what)
        : Error(what + " exceeds cap " + cap + "=" + std::to_string(limit)), cap_(cap), limit_(limit) {}

    const std::string& cap() const noexcept { return cap_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::string cap_;
    std::size_t limit_;
};

/// An exactly checked identity failed. Always a bug or corrupt input.
class AssertionFailure : public Error {
public:
    using Error::Error;
};

}  // namespace qdepth
