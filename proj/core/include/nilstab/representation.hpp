#pragma once

#include "nilstab/cohomology.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace nilstab {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

/// Largest dimension accepted for dense conversion.
inline constexpr std::size_t kMaxDenseDimension = 1024;

/// Unitary of the form delta_j -> phases[j] * delta_{j + shift mod n}.
class PhaseShiftMatrix {
public:
  PhaseShiftMatrix(std::size_t n, std::size_t shift, std::vector<Complex> phases);

  static PhaseShiftMatrix identity(std::size_t n);

  std::size_t dim() const { return phases_.size(); }
  std::size_t shift() const { return shift_; }
  const std::vector<Complex>& phases() const { return phases_; }

private:
  std::size_t shift_;
  std::vector<Complex> phases_;
};

/// A * B, computed in structured form.
PhaseShiftMatrix compose(const PhaseShiftMatrix& A, const PhaseShiftMatrix& B);
PhaseShiftMatrix adjoint(const PhaseShiftMatrix& A);
PhaseShiftMatrix power(const PhaseShiftMatrix& A, long k);
DenseMatrix to_dense(const PhaseShiftMatrix& A);

/// Largest entrywise distance between two structured matrices with equal shift;
/// +infinity when the shifts differ.
double max_phase_distance(const PhaseShiftMatrix& A, const PhaseShiftMatrix& B);

/// exp(2 pi i r / n) for an exact residue r; exact at quarter turns.
Complex root_of_unity(const Integer& r, std::size_t n);

/// Throws NotCoprime unless gcd(n, denominators of p) = 1.
void require_coprime(const PolyCocycle& sigma, std::size_t n);
bool is_coprime(const PolyCocycle& sigma, std::size_t n);

/// rho_n(x) delta_j = exp(2 pi i p(x, j) / n) delta_{j + x1}, with p(x, j)
/// reduced mod n exactly before exponentiation.
PhaseShiftMatrix build_rho(const PolyCocycle& sigma, std::size_t n, const GroupElement& x);

enum class NormKind { Frobenius, Operator };

struct PowerIterationOptions {
  double tol = 1e-12;
  int max_iterations = 10000;
};

double frobenius_norm(const DenseMatrix& M);
/// Largest singular value by power iteration on M^* M. Runs from the normalized
/// all-ones vector and from a fixed pseudo-random vector and keeps the larger
/// estimate. Throws NoConvergenceError (with a lower bound) on exhaustion.
double operator_norm(const DenseMatrix& M, const PowerIterationOptions& opts = {});
double norm(const DenseMatrix& M, NormKind kind, const PowerIterationOptions& opts = {});

/// chi_n(x, y) = exp(2 pi i p(x, y1) / n).
Complex chi(const PolyCocycle& sigma, std::size_t n, const GroupElement& x, const GroupElement& y);

struct Defect {
  Integer sigma;
  double frob;
  double op;
  double bound_frob;
  double bound_op;
};

/// Multiplicativity defect of rho_n at (x, y) in both norms, together with the
/// bounds 2 pi |sigma| / sqrt(n) and 2 pi |sigma| / n. Throws BoundViolated when
/// a measured defect exceeds its bound by more than 1e-9.
Defect defect(const PolyCocycle& sigma, std::size_t n, const GroupElement& x, const GroupElement& y);

/// Checks that rho_n(xy) rho_n(y)^{-1} rho_n(x)^{-1} is the scalar chi_n(x, y)^{-1}
/// (to 1e-12) and returns chi_n(x, y). Throws NotScalar otherwise.
Complex chi_scalar_check(const PolyCocycle& sigma, std::size_t n, const GroupElement& x,
                         const GroupElement& y);

struct VoiculescuPair {
  PhaseShiftMatrix u;
  PhaseShiftMatrix v;
};

/// u: the cyclic shift delta_j -> delta_{j+1}; v: diag(exp(2 pi i (j+1) / n)).
/// Asserts u v u^{-1} v^{-1} = exp(-2 pi i / n) to 1e-13 and that
/// u^a v^b = u^{-1} rho_n(a, b) u for the cocycle x2*y1.
VoiculescuPair voiculescu_pair(std::size_t n);

} // namespace nilstab
