#pragma once

#include <stdexcept>
#include <string>

namespace braidgrowth {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two degree sequences (or partitions) that must share a sum do not.
class SumMismatch : public Error {
 public:
  SumMismatch(long long left, long long right)
      : Error("degree sums differ: " + std::to_string(left) + " vs " +
              std::to_string(right)),
        left_(left),
        right_(right) {}

  long long left() const noexcept { return left_; }
  long long right() const noexcept { return right_; }

 private:
  long long left_;
  long long right_;
};

/// An oracle was asked for an input beyond its configured size bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// brute_force_count was called above its edge-count threshold.
class ThresholdExceeded : public BoundExceeded {
 public:
  using BoundExceeded::BoundExceeded;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A structural check on a computed object failed. Always an implementation
/// bug, never bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace braidgrowth
