#pragma once

#include <stdexcept>
#include <string>

namespace nhd {

// Exception hierarchy. Every library failure derives from nhd::Error so the
// CLI can map categories onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed JSON, invalid config, violated invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Argument outside the domain an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidContourError : public DomainError {
public:
    using DomainError::DomainError;
};

// Integral does not converge, or the finite window cannot certify it.
class DivergenceError : public Error {
public:
    using Error::Error;
};

class WindowTooSmallError : public Error {
public:
    using Error::Error;
};

// Edge samples of a grid are too large for a truncated transform.
class EdgeTruncationError : public Error {
public:
    using Error::Error;
};

// Amplitudes blew up during integration.
class InstabilityError : public Error {
public:
    using Error::Error;
};

} // namespace nhd
