#pragma once

#include <stdexcept>
#include <string>

namespace scd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes of two operands are incompatible, or a matrix is not 2n x n.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Input columns do not have full rank at the working tolerance.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

// The lower n x n block of a basis is singular, so no C matrix exists.
class NotRegular : public Error {
 public:
  using Error::Error;
};

class SingularTransform : public Error {
 public:
  using Error::Error;
};

// The constraint system Ax <= b, Ex = e has no solution.
class InfeasibleSet : public Error {
 public:
  using Error::Error;
};

class QPFailure : public Error {
 public:
  using Error::Error;
};

class PointNotInSet : public Error {
 public:
  using Error::Error;
};

// A vector fails the normal-cone membership test at the given point.
class NotANormal : public Error {
 public:
  using Error::Error;
};

// Face or generator enumeration was asked to run beyond the supported size.
class ScaleLimitExceeded : public Error {
 public:
  using Error::Error;
};

class EmptyBundle : public Error {
 public:
  using Error::Error;
};

class NoRegularSubspace : public Error {
 public:
  using Error::Error;
};

class JsonError : public Error {
 public:
  using Error::Error;
};

}  // namespace scd
