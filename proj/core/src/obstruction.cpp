#include "nilstab/obstruction.hpp"

#include "nilstab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace nilstab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v)
{
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Operator norm, falling back to the Frobenius norm (an upper bound) if power
// iteration does not settle.
double op_norm_upper(const DenseMatrix& M)
{
  try {
    return operator_norm(M);
  } catch (const NoConvergenceError&) {
    return frobenius_norm(M);
  }
}

} // namespace

DenseMatrix matrix_exp_taylor(const DenseMatrix& A)
{
  const Eigen::Index n = A.rows();
  double a = A.norm();
  int squarings = 0;
  if (a > 0.5)
    squarings = static_cast<int>(std::ceil(std::log2(a / 0.5)));
  DenseMatrix B = A / std::ldexp(1.0, squarings);
  DenseMatrix result = DenseMatrix::Identity(n, n);
  DenseMatrix term = DenseMatrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * B / static_cast<double>(k);
    result += term;
    if (term.norm() < 1e-18)
      break;
  }
  for (int s = 0; s < squarings; ++s)
    result = result * result;
  return result;
}

LogResult matrix_log_near_identity(const DenseMatrix& M, const LogOptions& opts)
{
  if (M.rows() != M.cols())
    throw Error(ErrorKind::DimensionMismatch, "matrix log needs a square matrix");
  const Eigen::Index n = M.rows();
  const DenseMatrix X = M - DenseMatrix::Identity(n, n);
  const double dist = op_norm_upper(X);
  if (dist >= 1.0)
    throw Error(ErrorKind::TooFarFromIdentity, "||M - I|| = " + fmt(dist));

  LogResult out;
  out.value = DenseMatrix::Zero(n, n);
  DenseMatrix power = X;
  for (int k = 1; k <= opts.max_terms; ++k) {
    DenseMatrix term = power / static_cast<double>(k);
    if (k % 2 == 0)
      out.value -= term;
    else
      out.value += term;
    out.terms = k;
    if (term.norm() < opts.tol)
      break;
    power = power * X;
  }
  if (opts.verify)
    out.roundtrip_error = (matrix_exp_taylor(out.value) - M).norm();
  return out;
}

PairingResult winding_pairing(const UnitaryFamily& rho, const Chain2& c, const MalcevGroup& G,
                              const PairingOptions& opts)
{
  PairingResult r;
  r.is_cycle = is_cycle(G, c);

  std::map<GroupElement, DenseMatrix> cache;
  auto get = [&](const GroupElement& g) -> const DenseMatrix& {
    auto it = cache.find(g);
    if (it == cache.end())
      it = cache.emplace(g, rho(g)).first;
    return it->second;
  };

  double sum = 0.0;
  for (std::size_t j = 0; j < c.terms.size(); ++j) {
    const auto& t = c.terms[j];
    const DenseMatrix& ra = get(t.a);
    const DenseMatrix& rb = get(t.b);
    const DenseMatrix& rab = get(multiply(G, t.a, t.b));
    DenseMatrix T = opts.ordering == LogOrdering::Summand ? DenseMatrix(rab * rb.adjoint() * ra.adjoint())
                                                          : DenseMatrix(rab * ra.adjoint() * rb.adjoint());
    const Eigen::Index n = T.rows();
    double dist = op_norm_upper(T - DenseMatrix::Identity(n, n));
    r.term_distances.push_back(dist);
    if (dist + opts.margin >= 1.0)
      throw TermOutOfRangeError(j, dist);

    LogResult L = matrix_log_near_identity(T, opts.log);
    Complex tr = L.value.trace();
    r.traces.push_back(tr);
    r.per_term_log_norms.push_back(L.value.norm());
    r.max_roundtrip_error = std::max(r.max_roundtrip_error, L.roundtrip_error);
    sum += t.coef.get_d() * tr.imag();
  }
  r.raw = sum / kTwoPi;
  double nearest = std::round(r.raw);
  r.residual = std::abs(r.raw - nearest);
  if (r.is_cycle && r.residual < 1e-6)
    r.rounded = Integer(static_cast<long>(nearest));
  return r;
}

UnitaryFamily rho_family(const PolyCocycle& sigma, std::size_t n)
{
  require_coprime(sigma, n);
  return [sigma, n](const GroupElement& g) { return to_dense(build_rho(sigma, n, g)); };
}

std::size_t CertificateReport::certified_count() const
{
  std::size_t k = 0;
  for (const auto& e : entries)
    if (e.status == "certified")
      ++k;
  return k;
}

bool CertificateReport::ok() const
{
  if (certified_count() == 0)
    return false;
  for (const auto& e : entries)
    if (e.status != "certified" && e.status != "skipped:not_coprime")
      return false;
  return true;
}

CertificateReport certify_nonperturbability(const PolyCocycle& sigma, const Chain2& c,
                                            const std::vector<std::size_t>& n_list,
                                            const PairingOptions& opts)
{
  const MalcevGroup& G = *sigma.group();
  if (n_list.empty())
    throw Error(ErrorKind::InvalidArgument, "empty n list");
  for (const auto& t : c.terms)
    if (t.a.size() != G.hirsch() || t.b.size() != G.hirsch())
      throw Error(ErrorKind::InvalidArgument, "chain term has wrong Hirsch length");
  if (!is_cycle(G, c))
    throw Error(ErrorKind::NotACycle, "boundary of the chain is not zero");

  CertificateReport rep;
  rep.group = G.name();
  rep.cocycle = sigma.name();
  rep.sigma_pairing = pair_cocycle_cycle(Cocycle(sigma), c);
  if (rep.sigma_pairing == 0)
    throw Error(ErrorKind::TorsionPairing, "<sigma, c> = 0, nothing to certify");
  rep.expected = -rep.sigma_pairing;
  rep.margin = opts.margin;

  for (std::size_t n : n_list) {
    CertificateEntry e;
    e.n = n;
    if (n == 0)
      throw Error(ErrorKind::InvalidArgument, "n must be positive");
    if (!is_coprime(sigma, n)) {
      e.status = "skipped:not_coprime";
      e.note = "n shares a factor with the coefficient denominators (lcm " +
               to_string(sigma.poly().denominator_lcm()) + ")";
      rep.entries.push_back(std::move(e));
      continue;
    }
    UnitaryFamily rho = rho_family(sigma, n);
    try {
      e.pairing = winding_pairing(rho, c, G, opts);
    } catch (const TermOutOfRangeError& err) {
      e.status = "undefined:term_out_of_range";
      e.note = err.what();
      rep.entries.push_back(std::move(e));
      continue;
    }
    for (std::size_t j = 0; j < c.terms.size(); ++j) {
      double expected_im = -kTwoPi * sigma(c.terms[j].a, c.terms[j].b).get_d();
      Complex diff = e.pairing->traces[j] - Complex(0.0, expected_im);
      e.scalar_log_error = std::max(e.scalar_log_error, std::abs(diff));
    }
    if (!e.pairing->rounded || *e.pairing->rounded != rep.expected ||
        e.scalar_log_error > rep.scalar_log_tolerance)
      throw Error(ErrorKind::PairingMismatch,
                  "n = " + std::to_string(n) + ": raw pairing " + fmt(e.pairing->raw) +
                      ", expected " + to_string(rep.expected) + ", scalar log error " +
                      fmt(e.scalar_log_error));
    e.status = "certified";

    PairingOptions alt = opts;
    alt.ordering = opts.ordering == LogOrdering::Summand ? LogOrdering::Precondition
                                                         : LogOrdering::Summand;
    try {
      e.alternate = winding_pairing(rho, c, G, alt);
    } catch (const TermOutOfRangeError&) {
    }
    rep.entries.push_back(std::move(e));
  }

  std::ostringstream s;
  s << "<sigma, c> = " << to_string(rep.sigma_pairing) << " and <rho_n, c> = "
    << to_string(rep.expected)
    << " at every certified n. Any unitary family within 1/24 in operator norm of a genuine "
       "representation on the elements a_j, b_j, a_j b_j of c pairs to 0 with c. So each "
       "certified rho_n is at operator-norm distance at least 1/24 from every genuine "
       "representation on these elements, and at Frobenius distance at least 1/24 as well, "
       "since the Frobenius norm dominates the operator norm.";
  rep.statement = s.str();
  return rep;
}

UnitaryFamily diagonal_character_representation(std::vector<std::vector<double>> angles)
{
  if (angles.empty())
    throw Error(ErrorKind::InvalidArgument, "need at least one character");
  return [angles = std::move(angles)](const GroupElement& g) {
    const auto d = static_cast<Eigen::Index>(angles.size());
    DenseMatrix M = DenseMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto& th = angles[static_cast<std::size_t>(k)];
      if (th.size() != g.size())
        throw Error(ErrorKind::DimensionMismatch, "character angle count != Hirsch length");
      double phase = 0.0;
      for (std::size_t i = 0; i < th.size(); ++i)
        phase += th[i] * g.coords[i].get_d();
      M(k, k) = std::polar(1.0, kTwoPi * phase);
    }
    return M;
  };
}

NullTestReport perturbation_null_test(const UnitaryFamily& rep, const Chain2& c,
                                      const MalcevGroup& G, const NullTestOptions& opts)
{
  if (opts.epsilon < 0.0 || opts.epsilon > 1.0 / 24.0)
    throw Error(ErrorKind::InvalidArgument, "epsilon must lie in [0, 1/24]");

  std::set<GroupElement> support;
  for (const auto& t : c.terms) {
    GroupElement ab = multiply(G, t.a, t.b);
    DenseMatrix d = rep(ab) - rep(t.a) * rep(t.b);
    if (d.norm() > 1e-12)
      throw Error(ErrorKind::InvalidArgument,
                  "representation is not multiplicative at " + to_string(t.a) + ", " + to_string(t.b));
    support.insert(t.a);
    support.insert(t.b);
    support.insert(ab);
  }

  NullTestReport report;
  report.epsilon = opts.epsilon;
  report.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> scale(0.5, 1.0);

  for (int trial = 0; trial < opts.count; ++trial) {
    std::map<GroupElement, DenseMatrix> perturbed;
    for (const auto& g : support) {
      DenseMatrix base = rep(g);
      const Eigen::Index d = base.rows();
      DenseMatrix A(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index k = 0; k < d; ++k)
          A(i, k) = Complex(gauss(rng), gauss(rng));
      // H Hermitian, K = i H skew-adjoint with ||K|| = target < epsilon.
      DenseMatrix H = (A + A.adjoint()) / 2.0;
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(H);
      double hn = es.eigenvalues().cwiseAbs().maxCoeff();
      double target = opts.epsilon * (1.0 - 1e-9) * scale(rng);
      Eigen::VectorXd lambda = hn > 0.0 ? Eigen::VectorXd(es.eigenvalues() * (target / hn))
                                        : Eigen::VectorXd(es.eigenvalues() * 0.0);
      Eigen::VectorXcd phases(d);
      for (Eigen::Index i = 0; i < d; ++i)
        phases(i) = std::polar(1.0, lambda(i));
      DenseMatrix U = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
      DenseMatrix P = base * U;
      report.max_perturbation = std::max(report.max_perturbation, op_norm_upper(P - base));
      perturbed.emplace(g, std::move(P));
    }
    UnitaryFamily fam = [&perturbed](const GroupElement& g) { return perturbed.at(g); };
    ++report.trials;
    try {
      PairingResult r = winding_pairing(fam, c, G);
      report.max_residual = std::max(report.max_residual, r.residual);
      report.max_abs_raw = std::max(report.max_abs_raw, std::abs(r.raw));
      if (r.rounded && *r.rounded == 0)
        ++report.zero_pairings;
      else
        report.failures.push_back("trial " + std::to_string(trial) + ": raw " + fmt(r.raw));
    } catch (const TermOutOfRangeError& err) {
      report.failures.push_back("trial " + std::to_string(trial) + ": " + err.what());
    }
  }
  return report;
}

} // namespace nilstab
