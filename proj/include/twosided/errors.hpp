#pragma once

#include <stdexcept>
#include <string>

namespace twosided {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad Coxeter matrix, unparsable type label, bad ids.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A Coxeter matrix has an infinite (affine or indefinite) component.
class NotFinite : public Error {
public:
  using Error::Error;
};

/// An element or face budget would be exceeded.
class CapacityExceeded : public Error {
public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class MethodMismatch : public Error {
public:
  using Error::Error;
};

/// A serialized group table failed validation.
class CorruptCache : public Error {
public:
  using Error::Error;
};

/// An exact linear solve has no (integral) solution.
class NoSolution : public Error {
public:
  using Error::Error;
};

/// An operation that only makes sense for a particular Coxeter type.
class WrongType : public Error {
public:
  using Error::Error;
};

/// A value violates a documented structural invariant.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

class WrongShape : public Error {
public:
  using Error::Error;
};

class NegativeEntry : public Error {
public:
  using Error::Error;
};

class NotAFacetPermutation : public Error {
public:
  using Error::Error;
};

} // namespace twosided
