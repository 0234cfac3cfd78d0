#pragma once

#include <stdexcept>
#include <string>

namespace fhshape {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A configuration value violates an invariant (bad parameter, bad JSON schema).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Malformed input that could not be parsed (CSV rows, timestamps).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Well-formed input whose content violates a data invariant
/// (negative attenuation, non-monotonic timestamps, empty trace).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Filesystem-level failure (missing file, unwritable output directory).
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace fhshape
