#pragma once

#include <stdexcept>
#include <string>

namespace padic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
public:
  using Error::Error;
};

/// Operands built over different primes were combined.
class PrimeMismatch : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by an exact zero") {}
};

/// Inversion of a value only known to be congruent to 0 modulo p^A.
class IndeterminateValuation : public Error {
public:
  IndeterminateValuation() : Error("cannot invert a value not known to be nonzero") {}
};

class ZeroHasNoExpansion : public Error {
public:
  ZeroHasNoExpansion() : Error("zero has no canonical expansion") {}
};

class InsufficientPrecision : public Error {
public:
  using Error::Error;
};

class NotAnInteger : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class DomainTooLarge : public Error {
public:
  using Error::Error;
};

} // namespace padic
