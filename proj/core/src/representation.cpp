#include "nilstab/representation.hpp"

#include "nilstab/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace nilstab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt_double(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

PhaseShiftMatrix::PhaseShiftMatrix(std::size_t n, std::size_t shift, std::vector<Complex> phases)
    : shift_(n == 0 ? 0 : shift % n), phases_(std::move(phases))
{
  if (n == 0)
    throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  if (phases_.size() != n)
    throw Error(ErrorKind::InvalidArgument, "need exactly n phases");
  for (const auto& p : phases_)
    if (std::abs(std::abs(p) - 1.0) > 1e-14)
      throw Error(ErrorKind::InvalidArgument, "phase of modulus " + fmt_double(std::abs(p)));
}

PhaseShiftMatrix PhaseShiftMatrix::identity(std::size_t n)
{
  return PhaseShiftMatrix(n, 0, std::vector<Complex>(n, Complex(1.0, 0.0)));
}

PhaseShiftMatrix compose(const PhaseShiftMatrix& A, const PhaseShiftMatrix& B)
{
  const std::size_t n = A.dim();
  if (B.dim() != n)
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(A.dim()) + " vs " + std::to_string(B.dim()));
  // (AB) delta_j = b_j A delta_{j+sB} = b_j a_{j+sB} delta_{j+sB+sA}.
  std::vector<Complex> phases(n);
  for (std::size_t j = 0; j < n; ++j)
    phases[j] = A.phases()[(j + B.shift()) % n] * B.phases()[j];
  return PhaseShiftMatrix(n, (A.shift() + B.shift()) % n, std::move(phases));
}

PhaseShiftMatrix adjoint(const PhaseShiftMatrix& A)
{
  const std::size_t n = A.dim();
  const std::size_t s = A.shift();
  // A^* delta_k = conj(a_{k-s}) delta_{k-s}.
  std::vector<Complex> phases(n);
  for (std::size_t k = 0; k < n; ++k)
    phases[k] = std::conj(A.phases()[(k + n - s) % n]);
  return PhaseShiftMatrix(n, (n - s) % n, std::move(phases));
}

PhaseShiftMatrix power(const PhaseShiftMatrix& A, long k)
{
  PhaseShiftMatrix base = k < 0 ? adjoint(A) : A;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  PhaseShiftMatrix result = PhaseShiftMatrix::identity(A.dim());
  while (e > 0) {
    if (e & 1ul)
      result = compose(result, base);
    e >>= 1;
    if (e > 0)
      base = compose(base, base);
  }
  return result;
}

DenseMatrix to_dense(const PhaseShiftMatrix& A)
{
  const std::size_t n = A.dim();
  if (n > kMaxDenseDimension)
    throw Error(ErrorKind::InvalidArgument,
                "dense matrices are limited to n <= " + std::to_string(kMaxDenseDimension));
  DenseMatrix M = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    M(static_cast<Eigen::Index>((j + A.shift()) % n), static_cast<Eigen::Index>(j)) = A.phases()[j];
  return M;
}

double max_phase_distance(const PhaseShiftMatrix& A, const PhaseShiftMatrix& B)
{
  if (A.dim() != B.dim())
    throw Error(ErrorKind::DimensionMismatch, "max_phase_distance");
  if (A.shift() != B.shift())
    return std::numeric_limits<double>::infinity();
  double d = 0;
  for (std::size_t j = 0; j < A.dim(); ++j)
    d = std::max(d, std::abs(A.phases()[j] - B.phases()[j]));
  return d;
}

Complex root_of_unity(const Integer& r, std::size_t n)
{
  Integer red = floor_mod(r, Integer(static_cast<unsigned long>(n)));
  // Quarter turns are returned exactly.
  const unsigned long q = red.get_ui() * 4;
  if (q % n == 0) {
    static const Complex quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    return quarter[q / n];
  }
  double angle = kTwoPi * static_cast<double>(red.get_ui()) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

bool is_coprime(const PolyCocycle& sigma, std::size_t n)
{
  Integer g;
  Integer den = sigma.poly().denominator_lcm();
  Integer nn(static_cast<unsigned long>(n));
  mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), nn.get_mpz_t());
  return g == 1;
}

void require_coprime(const PolyCocycle& sigma, std::size_t n)
{
  if (n == 0)
    throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  if (!is_coprime(sigma, n))
    throw Error(ErrorKind::NotCoprime,
                "n = " + std::to_string(n) + " shares a factor with the coefficient denominators (lcm " +
                    to_string(sigma.poly().denominator_lcm()) + ")");
}

namespace {

// Coefficients of j -> p(x, j) as a univariate polynomial in j.
std::vector<Rational> specialize(const PolyCocycle& sigma, const GroupElement& x)
{
  const std::size_t m = sigma.group()->hirsch();
  if (x.size() != m)
    throw Error(ErrorKind::InvalidArgument, "element has wrong Hirsch length");
  std::vector<Rational> coeffs(sigma.poly().degree_in(m) + 1);
  Integer mono, pw;
  for (const auto& [e, c] : sigma.poly().terms()) {
    mono = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (e[i] == 0)
        continue;
      mpz_pow_ui(pw.get_mpz_t(), x.coords[i].get_mpz_t(), e[i]);
      mono *= pw;
    }
    coeffs[e[m]] += c * Rational(mono);
  }
  return coeffs;
}

Rational horner(const std::vector<Rational>& coeffs, const Integer& j)
{
  Rational v = 0;
  Rational jj(j);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    v = v * jj + *it;
  return v;
}

} // namespace

namespace {

struct Residues {
  std::size_t shift;
  std::vector<unsigned long> r;
};

// p(x, j) mod n for j = 0..n-1, exactly.
Residues rho_residues(const PolyCocycle& sigma, std::size_t n, const GroupElement& x)
{
  require_coprime(sigma, n);
  const auto coeffs = specialize(sigma, x);
  const Integer nn(static_cast<unsigned long>(n));
  auto residue = [&](const Integer& j) {
    return floor_mod(to_integer(horner(coeffs, j), "p(x, j) for x = " + to_string(x)), nn);
  };
  Residues out{floor_mod(x.coords[0], nn).get_ui(), std::vector<unsigned long>(n)};
  for (std::size_t j = 0; j < n; ++j)
    out.r[j] = residue(Integer(static_cast<unsigned long>(j))).get_ui();

  // Spot-check that j and j +- n give the same residue.
  for (std::size_t j : {std::size_t{0}, std::size_t{1}, n - 1}) {
    Integer jj(static_cast<unsigned long>(j));
    if (residue(jj + nn) != out.r[j] || residue(jj - nn) != out.r[j])
      throw Error(ErrorKind::NotCoprime, "p(x, j) mod n is not n-periodic in j at j = " +
                                             std::to_string(j));
  }
  return out;
}

PhaseShiftMatrix from_residues(const Residues& res, std::size_t n)
{
  std::vector<Complex> phases(n);
  for (std::size_t j = 0; j < n; ++j)
    phases[j] = root_of_unity(Integer(res.r[j]), n);
  return PhaseShiftMatrix(n, res.shift, std::move(phases));
}

} // namespace

PhaseShiftMatrix build_rho(const PolyCocycle& sigma, std::size_t n, const GroupElement& x)
{
  return from_residues(rho_residues(sigma, n, x), n);
}

double frobenius_norm(const DenseMatrix& M) { return M.norm(); }

namespace {

struct PowerResult {
  double lambda;
  bool converged;
};

PowerResult power_iterate(const DenseMatrix& M, Eigen::VectorXcd v, const PowerIterationOptions& opts)
{
  double nv = v.norm();
  if (nv == 0)
    return {0.0, true};
  v /= nv;
  double lambda = -1.0;
  double best = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    Eigen::VectorXcd mv = M * v;
    double next = mv.squaredNorm(); // Rayleigh quotient of M^*M at unit v
    best = std::max(best, next);
    Eigen::VectorXcd w = M.adjoint() * mv;
    double nw = w.norm();
    if (std::abs(next - lambda) <= opts.tol * std::max(next, std::numeric_limits<double>::min()) ||
        nw == 0.0)
      return {best, true};
    lambda = next;
    v = w / nw;
  }
  return {best, false};
}

} // namespace

double operator_norm(const DenseMatrix& M, const PowerIterationOptions& opts)
{
  const Eigen::Index n = M.cols();
  if (n == 0 || M.rows() == 0)
    return 0.0;
  Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(n);
  // A second deterministic start vector guards against starts orthogonal to
  // the top singular vector (all-ones is an eigenvector of every circulant).
  std::mt19937_64 rng(kDefaultSeed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd scrambled(n);
  for (Eigen::Index i = 0; i < n; ++i)
    scrambled(i) = Complex(gauss(rng), gauss(rng));

  PowerResult a = power_iterate(M, ones, opts);
  PowerResult b = power_iterate(M, scrambled, opts);
  double best = std::sqrt(std::max(a.lambda, b.lambda));
  if (!a.converged || !b.converged)
    throw NoConvergenceError(best, opts.max_iterations);
  return best;
}

double norm(const DenseMatrix& M, NormKind kind, const PowerIterationOptions& opts)
{
  return kind == NormKind::Frobenius ? frobenius_norm(M) : operator_norm(M, opts);
}

Complex chi(const PolyCocycle& sigma, std::size_t n, const GroupElement& x, const GroupElement& y)
{
  require_coprime(sigma, n);
  return root_of_unity(sigma(x, y), n);
}

Defect defect(const PolyCocycle& sigma, std::size_t n, const GroupElement& x, const GroupElement& y)
{
  const MalcevGroup& G = *sigma.group();
  // The product is formed on exact residues so that equal residues give
  // bitwise equal phases.
  const Residues rx = rho_residues(sigma, n, x);
  const Residues ry = rho_residues(sigma, n, y);
  Residues prod{(rx.shift + ry.shift) % n, std::vector<unsigned long>(n)};
  for (std::size_t j = 0; j < n; ++j)
    prod.r[j] = (rx.r[(j + ry.shift) % n] + ry.r[j]) % n;
  DenseMatrix diff = to_dense(from_residues(rho_residues(sigma, n, multiply(G, x, y)), n)) -
                     to_dense(from_residues(prod, n));

  Defect d;
  d.sigma = sigma(x, y);
  d.frob = frobenius_norm(diff);
  d.op = operator_norm(diff);
  double s = std::abs(d.sigma.get_d());
  d.bound_frob = kTwoPi * s / std::sqrt(static_cast<double>(n));
  d.bound_op = kTwoPi * s / static_cast<double>(n);
  if (d.frob > d.bound_frob + 1e-9 || d.op > d.bound_op + 1e-9)
    throw Error(ErrorKind::BoundViolated,
                "n = " + std::to_string(n) + ", x = " + to_string(x) + ", y = " + to_string(y) +
                    ": frob " + fmt_double(d.frob) + " (bound " + fmt_double(d.bound_frob) +
                    "), op " + fmt_double(d.op) + " (bound " + fmt_double(d.bound_op) + ")");
  return d;
}

Complex chi_scalar_check(const PolyCocycle& sigma, std::size_t n, const GroupElement& x,
                         const GroupElement& y)
{
  const MalcevGroup& G = *sigma.group();
  PhaseShiftMatrix t = compose(compose(build_rho(sigma, n, multiply(G, x, y)),
                                       adjoint(build_rho(sigma, n, y))),
                               adjoint(build_rho(sigma, n, x)));
  if (t.shift() != 0)
    throw Error(ErrorKind::NotScalar, "triple product has shift " + std::to_string(t.shift()));
  const Complex c = chi(sigma, n, x, y);
  const Complex expected = std::conj(c);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(t.phases()[j] - t.phases()[0]) > 1e-12)
      throw Error(ErrorKind::NotScalar, "diagonal entry " + std::to_string(j) +
                                            " differs from entry 0 for x = " + to_string(x) +
                                            ", y = " + to_string(y));
    if (std::abs(t.phases()[j] - expected) > 1e-12)
      throw Error(ErrorKind::NotScalar, "diagonal entry " + std::to_string(j) +
                                            " differs from chi^{-1} for x = " + to_string(x) +
                                            ", y = " + to_string(y));
  }
  return c;
}

VoiculescuPair voiculescu_pair(std::size_t n)
{
  if (n == 0)
    throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  PhaseShiftMatrix u(n, 1, std::vector<Complex>(n, Complex(1.0, 0.0)));
  std::vector<Complex> vp(n);
  for (std::size_t j = 0; j < n; ++j)
    vp[j] = root_of_unity(Integer(static_cast<unsigned long>(j + 1)), n);
  PhaseShiftMatrix v(n, 0, std::move(vp));

  PhaseShiftMatrix comm = compose(compose(compose(u, v), adjoint(u)), adjoint(v));
  std::vector<Complex> scalar(n, root_of_unity(Integer(-1), n));
  if (max_phase_distance(comm, PhaseShiftMatrix(n, 0, scalar)) > 1e-13)
    throw Error(ErrorKind::Internal, "u v u^{-1} v^{-1} != exp(-2 pi i / n)");

  // u^a v^b = u^{-1} rho_n(a, b) u.
  const PolyCocycle z2 = builtin_cocycle("z2_skinny");
  for (const auto& [a, b] : {std::pair{1L, 0L}, {0L, 1L}, {1L, 1L}, {2L, -1L}}) {
    PhaseShiftMatrix lhs = compose(power(u, a), power(v, b));
    PhaseShiftMatrix rhs = compose(compose(adjoint(u), build_rho(z2, n, GroupElement{a, b})), u);
    if (max_phase_distance(lhs, rhs) > 1e-13)
      throw Error(ErrorKind::Internal, "u^a v^b does not match the conjugated rho_n");
  }
  return {u, v};
}

} // namespace nilstab
