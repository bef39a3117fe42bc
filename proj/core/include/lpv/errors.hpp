#pragma once

#include <stdexcept>
#include <string>

namespace lpv {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input or configuration (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Grid is too small for the requested stencil.
class SizingError : public ConfigError {
public:
    SizingError(const std::string& what, int requiredNx, int requiredNt)
        : ConfigError(what), requiredNx_(requiredNx), requiredNt_(requiredNt) {}

    int requiredNx() const noexcept { return requiredNx_; }
    int requiredNt() const noexcept { return requiredNt_; }

private:
    int requiredNx_;
    int requiredNt_;
};

/// A derivative order beyond what the source can provide.
class CapabilityError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Operation precondition violated by the caller.
class PreconditionError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Numerical failure: singularity, non-convergence (CLI exit code 3).
class NumericError : public Error {
public:
    using Error::Error;
};

/// A velocity law hit a vanishing denominator.
class SingularError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace lpv
