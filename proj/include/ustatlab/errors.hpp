#ifndef USTATLAB_ERRORS_HPP
#define USTATLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ustatlab {

// Base class for all library failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration: bad parameters, missing kernel metadata, malformed
// input files. The CLI maps these to usage errors (exit 2).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Argument outside a documented domain (lag beyond the ladder, n past the
// sample length, ...).
class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(what) {}
};

// Non-finite value where a finite one is required; carries the offending
// coordinates in the message.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what) {}
};

// Resource limits (digit materialization cap, file I/O).
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(what) {}
};

} // namespace ustatlab

#endif
