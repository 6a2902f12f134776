#include "nilstab/errors.hpp"

#include <sstream>

namespace nilstab {

std::string_view to_string(ErrorKind kind)
{
  switch (kind) {
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  case ErrorKind::NonIntegralValue: return "NonIntegralValue";
  case ErrorKind::NotCentral: return "NotCentral";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::ValidationError: return "ValidationError";
  case ErrorKind::InvalidCocycle: return "InvalidCocycle";
  case ErrorKind::NotASection: return "NotASection";
  case ErrorKind::NotSkinny: return "NotSkinny";
  case ErrorKind::NotSurjective: return "NotSurjective";
  case ErrorKind::DegreeBoundTooSmall: return "DegreeBoundTooSmall";
  case ErrorKind::NotCoprime: return "NotCoprime";
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::NoConvergence: return "NoConvergence";
  case ErrorKind::BoundViolated: return "BoundViolated";
  case ErrorKind::NotScalar: return "NotScalar";
  case ErrorKind::TooFarFromIdentity: return "TooFarFromIdentity";
  case ErrorKind::TermOutOfRange: return "TermOutOfRange";
  case ErrorKind::NotACycle: return "NotACycle";
  case ErrorKind::TorsionPairing: return "TorsionPairing";
  case ErrorKind::PairingMismatch: return "PairingMismatch";
  case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

namespace {

std::string no_convergence_message(double lower_bound, int iterations)
{
  std::ostringstream os;
  os.precision(17);
  os << "power iteration did not converge after " << iterations
     << " iterations; certified lower bound " << lower_bound;
  return os.str();
}

std::string term_message(std::size_t term, double distance)
{
  std::ostringstream os;
  os.precision(17);
  os << "term " << term << " has ||T - I|| = " << distance
     << ", outside the domain of the logarithm series";
  return os.str();
}

} // namespace

NoConvergenceError::NoConvergenceError(double lower_bound, int iterations)
    : Error(ErrorKind::NoConvergence, no_convergence_message(lower_bound, iterations)),
      lower_bound_(lower_bound)
{
}

TermOutOfRangeError::TermOutOfRangeError(std::size_t term, double distance)
    : Error(ErrorKind::TermOutOfRange, term_message(term, distance)), term_(term),
      distance_(distance)
{
}

} // namespace nilstab
