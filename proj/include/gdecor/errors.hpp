#pragma once

#include <stdexcept>
#include <string>

namespace gdecor {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (e.g. r <= 2M).
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// Quadrature or root finding did not reach its tolerance.
class ConvergenceError : public Error
{
  public:
    using Error::Error;
};

/// Parametric source used outside the weak-amplification regime.
class RegimeError : public Error
{
  public:
    using Error::Error;
};

/// Operator content outside what the affine expansion can represent.
class UnsupportedError : public Error
{
  public:
    using Error::Error;
};

/// Requested computation exceeds a hard resource cap.
class ResourceError : public Error
{
  public:
    using Error::Error;
};

/// Invalid or incomplete run configuration.
class ConfigError : public Error
{
  public:
    using Error::Error;
};

} // namespace gdecor
