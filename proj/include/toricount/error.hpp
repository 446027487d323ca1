#pragma once

#include <stdexcept>
#include <string>

namespace toricount {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document or text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series fails the convergence margin test at the requested point.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Enumeration exceeded its tuple or wall-clock budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Two independent computations that must agree did not.
class OracleMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace toricount
