#pragma once

#include <stdexcept>
#include <string>

namespace dat {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

class KappaOutOfRange : public Error {
 public:
  using Error::Error;
};

class BadRounding : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidX3C : public Error {
 public:
  using Error::Error;
};

class NotACover : public Error {
 public:
  using Error::Error;
};

class TargetUnreachable : public Error {
 public:
  using Error::Error;
};

class RelationViolation : public Error {
 public:
  using Error::Error;
};

class LpInfeasible : public Error {
 public:
  using Error::Error;
};

class LpUnbounded : public Error {
 public:
  using Error::Error;
};

class LpIterationLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace dat
