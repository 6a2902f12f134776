#include "nilstab/errors.hpp"
#include "nilstab/representation.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <numbers>

using namespace nilstab;

namespace {

constexpr double kPi = std::numbers::pi;

double svd_norm(const DenseMatrix& M) { return Eigen::JacobiSVD<DenseMatrix>(M).singularValues()(0); }

Complex expi(double t) { return std::polar(1.0, t); }

} // namespace

TEST_CASE("rho for x2*y1 at n=4, x=(1,1)")
{
  PolyCocycle s = builtin_cocycle("z2_skinny");
  PhaseShiftMatrix r = build_rho(s, 4, GroupElement{1, 1});
  CHECK(r.shift() == 1);
  const Complex I(0, 1);
  std::vector<Complex> want{1.0, I, -1.0, -I};
  for (int j = 0; j < 4; ++j)
    CHECK(std::abs(r.phases()[j] - want[j]) < 1e-15);
}

TEST_CASE("rho of the identity and of (0,3) at n=3")
{
  PolyCocycle s = builtin_cocycle("z2_skinny");
  CHECK(max_phase_distance(build_rho(s, 7, GroupElement{0, 0}), PhaseShiftMatrix::identity(7)) == 0.0);
  CHECK(max_phase_distance(build_rho(s, 3, GroupElement{0, 3}), PhaseShiftMatrix::identity(3)) == 0.0);
  PolyCocycle h = builtin_cocycle("heisenberg_skinny");
  CHECK(max_phase_distance(build_rho(h, 9, GroupElement{0, 0, 0}), PhaseShiftMatrix::identity(9)) == 0.0);
}

TEST_CASE("denominators must be coprime to n")
{
  PolyCocycle h = builtin_cocycle("heisenberg_skinny");
  CHECK_FALSE(is_coprime(h, 16));
  CHECK(is_coprime(h, 15));
  try {
    build_rho(h, 16, GroupElement{1, 1, 1});
    FAIL("expected NotCoprime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCoprime);
  }
}

TEST_CASE("structured algebra matches dense products")
{
  PolyCocycle h = builtin_cocycle("heisenberg_skinny");
  const std::size_t n = 11;
  ElementSampler samp(3, 3, 5);
  for (int i = 0; i < 30; ++i) {
    PhaseShiftMatrix A = build_rho(h, n, samp.next());
    PhaseShiftMatrix B = build_rho(h, n, samp.next());
    CHECK((to_dense(compose(A, B)) - to_dense(A) * to_dense(B)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((to_dense(adjoint(A)) - to_dense(A).adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(max_phase_distance(compose(A, adjoint(A)), PhaseShiftMatrix::identity(n)) < 1e-14);
    CHECK((to_dense(power(A, 3)) - to_dense(A) * to_dense(A) * to_dense(A)).cwiseAbs().maxCoeff() < 1e-13);
    DenseMatrix D = to_dense(A);
    CHECK((D.adjoint() * D - DenseMatrix::Identity(n, n)).norm() < 1e-12);
  }
  CHECK(to_dense(PhaseShiftMatrix::identity(5)) == DenseMatrix::Identity(5, 5));
  CHECK_THROWS_AS(compose(PhaseShiftMatrix::identity(3), PhaseShiftMatrix::identity(4)), Error);
}

TEST_CASE("phase moduli are checked")
{
  CHECK_THROWS_AS(PhaseShiftMatrix(2, 0, {1.0, 0.5}), Error);
  CHECK_THROWS_AS(PhaseShiftMatrix(2, 0, {1.0}), Error);
}

TEST_CASE("norm oracles")
{
  const Complex c(0.6, -0.8);
  DenseMatrix S = c * DenseMatrix::Identity(9, 9);
  CHECK(frobenius_norm(S) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(operator_norm(S) == doctest::Approx(1.0).epsilon(1e-12));

  DenseMatrix E = DenseMatrix::Zero(2, 2);
  E(0, 1) = 1.0;
  CHECK(frobenius_norm(E) == doctest::Approx(1.0));
  CHECK(operator_norm(E) == doctest::Approx(1.0).epsilon(1e-12));

  // Difference of equal-shift phase matrices: operator norm is the largest phase gap.
  PolyCocycle z = builtin_cocycle("z2_skinny");
  for (std::size_t n : {5u, 16u, 33u}) {
    PhaseShiftMatrix A = build_rho(z, n, GroupElement{2, 1});
    PhaseShiftMatrix B = build_rho(z, n, GroupElement{2, -3});
    DenseMatrix D = to_dense(A) - to_dense(B);
    CHECK(std::abs(operator_norm(D) - max_phase_distance(A, B)) < 1e-10);
    CHECK(std::abs(operator_norm(D) - svd_norm(D)) < 1e-10);
  }
}

TEST_CASE("operator norm agrees with SVD on a circulant-orthogonal case")
{
  // u - I kills the all-ones vector; the second start vector must take over.
  const std::size_t n = 8;
  PhaseShiftMatrix u(n, 1, std::vector<Complex>(n, 1.0));
  DenseMatrix D = to_dense(u) - DenseMatrix::Identity(n, n);
  CHECK(std::abs(operator_norm(D) - svd_norm(D)) < 1e-9);
  CHECK(operator_norm(D) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("power iteration reports a lower bound when it runs out")
{
  DenseMatrix M = DenseMatrix::Zero(2, 2);
  M(0, 0) = 1.0;
  M(1, 1) = 0.999;
  try {
    operator_norm(M, {1e-12, 3});
    FAIL("expected NoConvergence");
  } catch (const NoConvergenceError& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
    CHECK(e.lower_bound() <= 1.0 + 1e-12);
    CHECK(e.lower_bound() > 0.99);
  }
}

TEST_CASE("defect at n=16 for the Voiculescu pair of elements")
{
  PolyCocycle s = builtin_cocycle("z2_skinny");
  Defect d = defect(s, 16, GroupElement{0, 1}, GroupElement{1, 0});
  CHECK(d.sigma == 1);
  CHECK(d.frob == doctest::Approx(8.0 * std::sin(kPi / 16)).epsilon(1e-12));
  CHECK(d.frob == doctest::Approx(1.56072).epsilon(1e-5));
  CHECK(d.op == doctest::Approx(2.0 * std::sin(kPi / 16)).epsilon(1e-10));
  CHECK(d.bound_frob == doctest::Approx(2 * kPi / 4));

  Defect z = defect(s, 16, GroupElement{1, 0}, GroupElement{0, 1});
  CHECK(z.sigma == 0);
  CHECK(z.frob == 0.0);
  CHECK(z.op == 0.0);
}

TEST_CASE("Frobenius defect ratio tends to 1/sqrt(2) under doubling")
{
  PolyCocycle s = builtin_cocycle("z2_skinny");
  GroupElement x{1, 2}, y{3, -1};
  double a = defect(s, 256, x, y).frob;
  double b = defect(s, 512, x, y).frob;
  CHECK(std::abs(b / a - 1.0 / std::sqrt(2.0)) < 0.05 / std::sqrt(2.0));
}

TEST_CASE("chi and the scalar identity")
{
  PolyCocycle s = builtin_cocycle("z2_skinny");
  for (std::size_t n : {3u, 16u, 100u}) {
    Complex c = chi_scalar_check(s, n, GroupElement{0, 1}, GroupElement{1, 0});
    CHECK(std::abs(c - expi(2 * kPi / n)) < 1e-14);
  }
  CHECK(std::abs(chi_scalar_check(s, 8, GroupElement{0, 0}, GroupElement{2, 5}) - 1.0) < 1e-15);

  PolyCocycle h = builtin_cocycle("heisenberg_skinny");
  ElementSampler samp(3, 3, 17);
  for (int i = 0; i < 100; ++i) {
    GroupElement x = samp.next(), y = samp.next();
    Complex c = chi_scalar_check(h, 63, x, y);
    CHECK(std::abs(c - expi(2 * kPi * h(x, y).get_d() / 63)) < 1e-12);
  }
}

TEST_CASE("Voiculescu pair")
{
  for (std::size_t n : {1u, 2u, 3u, 4u, 17u, 64u}) {
    VoiculescuPair p = voiculescu_pair(n);
    DenseMatrix U = to_dense(p.u), V = to_dense(p.v);
    DenseMatrix comm = U * V * U.adjoint() * V.adjoint();
    DenseMatrix want = expi(-2 * kPi / n) * DenseMatrix::Identity(n, n);
    CHECK((comm - want).norm() < 1e-12);
  }
  VoiculescuPair p2 = voiculescu_pair(2);
  CHECK((to_dense(compose(compose(p2.u, p2.v), compose(adjoint(p2.u), adjoint(p2.v)))) +
         DenseMatrix::Identity(2, 2))
            .norm() < 1e-15);
  VoiculescuPair p4 = voiculescu_pair(4);
  PhaseShiftMatrix c4 = compose(compose(p4.u, p4.v), compose(adjoint(p4.u), adjoint(p4.v)));
  for (const auto& ph : c4.phases())
    CHECK(std::abs(ph - Complex(0, -1)) < 1e-15);
  VoiculescuPair p3 = voiculescu_pair(3);
  CHECK(std::abs(p3.v.phases()[0] - expi(2 * kPi / 3)) < 1e-15);
  CHECK(std::abs(p3.v.phases()[1] - expi(4 * kPi / 3)) < 1e-15);
  CHECK(std::abs(p3.v.phases()[2] - 1.0) < 1e-15);
}

TEST_CASE("u^a v^b is rho_n(a, b) conjugated by the cyclic shift")
{
  PolyCocycle s = builtin_cocycle("z2_skinny");
  const std::size_t n = 12;
  VoiculescuPair p = voiculescu_pair(n);
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      DenseMatrix lhs = to_dense(compose(power(p.u, a), power(p.v, b)));
      DenseMatrix rhs = to_dense(p.u).adjoint() * to_dense(build_rho(s, n, GroupElement{a, b})) * to_dense(p.u);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    }
}
