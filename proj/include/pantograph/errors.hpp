#pragma once

#include <stdexcept>
#include <string>

namespace pantograph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (config documents, scenario parameters).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested endpoint height lies outside the reachable stroke.
class ReachabilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Closed form requested for a geometry where it does not exist (l1 != l2).
class UnsupportedGeometryError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace pantograph
