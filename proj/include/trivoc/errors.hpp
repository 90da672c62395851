#pragma once

#include <stdexcept>
#include <string>

namespace trivoc {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// The three sampled points are collinear or (nearly) coincident, so no
// triad frame can be built.
class DegenerateTriad : public Error {
 public:
  using Error::Error;
};

// Least-squares alignment input is rank-deficient beyond the
// reflection-correctable case (e.g. all points collinear).
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

// A correspondence label was looked up in a consistency matrix that does
// not contain it.
class IndexNotInMatrix : public Error {
 public:
  using Error::Error;
};

// Fewer than three correspondences were supplied to a solver.
class InsufficientCorrespondences : public Error {
 public:
  using Error::Error;
};

// Instance exceeds the exhaustive oracle's triad budget.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

// Source cloud has fewer points than the requested sample size.
class SourceTooSmall : public Error {
 public:
  using Error::Error;
};

// Errors raised by file parsers; `where` identifies the offending line or
// byte position.
class ParseError : public Error {
 public:
  using Error::Error;
};

class MalformedHeader : public ParseError {
 public:
  using ParseError::ParseError;
};

class CountMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnsupportedFormat : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace trivoc
