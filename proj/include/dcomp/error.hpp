#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dcomp {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The symbol failed the class check (or it could not be decided).
class CertificationFailure : public Error {
 public:
  using Error::Error;
};

/// A root sits within tolerance of a contour, so the winding integer
/// cannot be certified.
class BoundaryHit : public Error {
 public:
  using Error::Error;
};

/// Preimages escape to +infinity (target equals phi(+inf)).
class AdaptiveBoundFailure : public Error {
 public:
  using Error::Error;
};

/// A matrix column needs more rows (or larger indices) than the cap allows.
class TailNotNegligible : public Error {
 public:
  TailNotNegligible(const std::string& what, std::uint64_t column)
      : Error(what), column_(column) {}
  std::uint64_t column() const noexcept { return column_; }

 private:
  std::uint64_t column_;
};

}  // namespace dcomp
