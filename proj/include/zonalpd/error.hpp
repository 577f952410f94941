#pragma once

#include <stdexcept>
#include <string>

namespace zonalpd {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (t ∉ [−1,1], NaN, α ≤ −1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis or smoothness bound is violated; the message names it.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Quadrature produced a non-finite value.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// The requested space has no point model (Cayley plane).
class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

/// A guarantee that should hold by construction was violated numerically.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace zonalpd
