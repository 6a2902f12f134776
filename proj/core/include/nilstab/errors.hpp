#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilstab {

enum class ErrorKind {
  InvalidArgument,
  NonIntegralValue,
  NotCentral,
  ParseError,
  ValidationError,
  InvalidCocycle,
  NotASection,
  NotSkinny,
  NotSurjective,
  DegreeBoundTooSmall,
  NotCoprime,
  DimensionMismatch,
  NoConvergence,
  BoundViolated,
  NotScalar,
  TooFarFromIdentity,
  TermOutOfRange,
  NotACycle,
  TorsionPairing,
  PairingMismatch,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Power iteration ran out of iterations. The Rayleigh quotient reached so far
/// is still a valid lower bound for the operator norm.
class NoConvergenceError : public Error {
public:
  NoConvergenceError(double lower_bound, int iterations);

  double lower_bound() const noexcept { return lower_bound_; }

private:
  double lower_bound_;
};

class TermOutOfRangeError : public Error {
public:
  TermOutOfRangeError(std::size_t term, double distance);

  std::size_t term() const noexcept { return term_; }
  double distance() const noexcept { return distance_; }

private:
  std::size_t term_;
  double distance_;
};

} // namespace nilstab
