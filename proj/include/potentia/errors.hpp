#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace potentia {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands do not conform (matrix shapes, vector lengths, bad k).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A requested matrix would exceed the dense-storage entry cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Game shape not supported by the requested operation
/// (non-uniform strategy counts, wrong player count, k < 2).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid strategy profile, player index, or player pair.
class ProfileError : public Error {
 public:
  using Error::Error;
};

/// Malformed game document; message carries the offending field path.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation requiring a potential game was called on a game that is not.
/// Carries the residuals of the failed verification so callers can report them.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what,
                             std::vector<double> residuals = {})
      : Error(what), residuals_(std::move(residuals)) {}

  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

}  // namespace potentia
