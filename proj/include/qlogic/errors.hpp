#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qlogic {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant (normalization, idempotence, evidence exclusivity, ...) does not hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A singular value landed too close to the rank threshold to decide the rank.
class IllConditionedSubspace : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

/// Periodic propagation folded more amplitude across the grid boundary than allowed.
class WrapAroundError : public InvariantViolation {
 public:
  WrapAroundError(double amplitude, double limit);

  double amplitude() const { return amplitude_; }
  double limit() const { return limit_; }

 private:
  double amplitude_;
  double limit_;
};

class UnboundAtom : public Error {
 public:
  explicit UnboundAtom(const std::string& name);
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlogic
