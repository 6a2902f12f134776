#include "nilstab/errors.hpp"
#include "nilstab/obstruction.hpp"

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

using namespace nilstab;

namespace {

// Unitary with ||U - I|| = dist exactly: V diag(exp(i t_k)) V^* with the largest
// |exp(i t_k) - 1| equal to dist.
DenseMatrix unitary_at_distance(std::size_t n, double dist, std::mt19937_64& rng)
{
  std::normal_distribution<double> g;
  DenseMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      A(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<DenseMatrix> qr(A);
  DenseMatrix Q = qr.householderQ();
  const double tmax = 2.0 * std::asin(dist / 2.0);
  std::uniform_real_distribution<double> u(-tmax, tmax);
  Eigen::VectorXcd d(n);
  for (std::size_t k = 0; k < n; ++k)
    d(k) = std::polar(1.0, k == 0 ? tmax : u(rng));
  return Q * d.asDiagonal() * Q.adjoint();
}

} // namespace

TEST_CASE("log of I and of a scalar")
{
  LogResult z = matrix_log_near_identity(DenseMatrix::Identity(4, 4));
  CHECK(z.value.norm() == 0.0);
  DenseMatrix M = std::polar(1.0, 0.1) * DenseMatrix::Identity(5, 5);
  LogResult l = matrix_log_near_identity(M);
  CHECK((l.value - Complex(0, 0.1) * DenseMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("log and exp agree with Eigen's matrix functions")
{
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10; ++i) {
    DenseMatrix U = unitary_at_distance(6, 0.5, rng);
    LogResult L = matrix_log_near_identity(U);
    DenseMatrix ref = U.log();
    CHECK((L.value - ref).norm() < 1e-10);
    CHECK((matrix_exp_taylor(L.value) - U).norm() < 1e-10);
    CHECK((matrix_exp_taylor(L.value) - L.value.exp()).norm() < 1e-12);
    CHECK(L.roundtrip_error < 1e-10);
  }
}

TEST_CASE("log refuses matrices far from the identity")
{
  try {
    matrix_log_near_identity(-DenseMatrix::Identity(3, 3));
    FAIL("expected TooFarFromIdentity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooFarFromIdentity);
  }
}

TEST_CASE("winding pairing of rho_n on the Voiculescu cycle")
{
  PolyCocycle s = builtin_cocycle("z2_skinny");
  const MalcevGroup& G = *s.group();
  PairingResult r = winding_pairing(rho_family(s, 32), voiculescu_cycle(), G);
  REQUIRE(r.rounded);
  CHECK(*r.rounded == -1);
  CHECK(r.residual < 1e-9);
  CHECK(r.is_cycle);

  PairingOptions other;
  other.ordering = LogOrdering::Precondition;
  PairingResult a = winding_pairing(rho_family(s, 32), voiculescu_cycle(), G, other);
  REQUIRE(a.rounded);
  CHECK(*a.rounded == 1);
}

TEST_CASE("a genuine character pairs to zero")
{
  const MalcevGroup G = make_lattice(2);
  UnitaryFamily chi = diagonal_character_representation({{0.3, 0.7}});
  PairingResult r = winding_pairing(chi, voiculescu_cycle(), G);
  REQUIRE(r.rounded);
  CHECK(*r.rounded == 0);
  CHECK(std::abs(r.raw) < 1e-12);
}

TEST_CASE("rounded value is withheld off cycles")
{
  PolyCocycle s = builtin_cocycle("z2_skinny");
  Chain2 c;
  c.add(1, GroupElement{0, 1}, GroupElement{1, 0});
  PairingResult r = winding_pairing(rho_family(s, 32), c, *s.group());
  CHECK_FALSE(r.is_cycle);
  CHECK_FALSE(r.rounded);
  CHECK(r.raw == doctest::Approx(-1.0));
}

TEST_CASE("terms too far from the identity are identified")
{
  PolyCocycle s = builtin_cocycle("z2_skinny");
  Chain2 c;
  c.add(1, GroupElement{1, 0}, GroupElement{0, 1});
  c.add(1, GroupElement{0, 2}, GroupElement{2, 0});
  c.normalize();
  try {
    winding_pairing(rho_family(s, 8), c, *s.group());
    FAIL("expected TermOutOfRange");
  } catch (const TermOutOfRangeError& e) {
    CHECK(e.distance() >= 1.0);
    CHECK(c.terms[e.term()].a == GroupElement{0, 2});
  }
}

TEST_CASE("certificates")
{
  PolyCocycle z = builtin_cocycle("z2_skinny");
  CertificateReport r = certify_nonperturbability(z, voiculescu_cycle(), {16, 32, 64});
  CHECK(r.ok());
  CHECK(r.sigma_pairing == 1);
  CHECK(r.expected == -1);
  for (const auto& e : r.entries) {
    CHECK(e.status == "certified");
    CHECK(*e.pairing->rounded == -1);
    REQUIRE(e.alternate);
    CHECK(*e.alternate->rounded == 1);
    CHECK(e.scalar_log_error < 1e-10);
  }
  CHECK(r.statement.find("1/24") != std::string::npos);

  PolyCocycle h = builtin_cocycle("heisenberg_skinny");
  CertificateReport rh = certify_nonperturbability(h, central_cycle(3, 1), {15, 16, 31, 33});
  CHECK(rh.ok());
  CHECK(rh.entries[1].status == "skipped:not_coprime");
  CHECK(rh.certified_count() == 3);
  for (const auto& e : rh.entries)
    if (e.pairing)
      CHECK(*e.pairing->rounded == -1);

  // c_3 at n = 5: the defect unitary is exp(6 pi i / 5), too far from I.
  CertificateReport small = certify_nonperturbability(h, central_cycle(3, 3), {5, 101});
  CHECK(small.entries[0].status == "undefined:term_out_of_range");
  CHECK(small.entries[1].status == "certified");
  CHECK(*small.entries[1].pairing->rounded == -3);
  CHECK_FALSE(small.ok());
}

TEST_CASE("certificate errors")
{
  PolyCocycle z = builtin_cocycle("z2_skinny");
  try {
    certify_nonperturbability(scale_cocycle(z, Integer(0)), voiculescu_cycle(), {16});
    FAIL("expected TorsionPairing");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TorsionPairing);
  }
  Chain2 open;
  open.add(1, GroupElement{0, 1}, GroupElement{1, 0});
  try {
    certify_nonperturbability(z, open, {16});
    FAIL("expected NotACycle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACycle);
  }
}

TEST_CASE("perturbations of genuine representations pair to zero")
{
  const MalcevGroup G = make_lattice(2);
  UnitaryFamily rep = diagonal_character_representation({{0.1, 0.25}, {0.5, -0.3}, {0.0, 0.0}});

  NullTestReport r = perturbation_null_test(rep, voiculescu_cycle(), G, {1.0 / 25.0, 40, 5});
  CHECK(r.passed());
  CHECK(r.max_perturbation < 1.0 / 25.0);
  CHECK(r.max_residual < 1e-6);

  NullTestReport triv = perturbation_null_test(diagonal_character_representation({{0, 0}, {0, 0}}),
                                               voiculescu_cycle(), G, {0.04, 20, 6});
  CHECK(triv.passed());

  NullTestReport exact = perturbation_null_test(rep, voiculescu_cycle(), G, {0.0, 5, 7});
  CHECK(exact.passed());
  CHECK(exact.max_residual < 1e-12);

  CHECK_THROWS_AS(perturbation_null_test(rep, voiculescu_cycle(), G, {0.05, 1, 1}), Error);
  PolyCocycle z = builtin_cocycle("z2_skinny");
  CHECK_THROWS_AS(perturbation_null_test(rho_family(z, 8), voiculescu_cycle(), G, {0.01, 1, 1}), Error);
}
