#include "nilstab/errors.hpp"
#include "nilstab/poly.hpp"

#include <doctest.h>

using namespace nilstab;

namespace {

const std::vector<std::string> kXY{"x", "y"};

MultiPoly X() { return MultiPoly::variable(kXY, 0); }
MultiPoly Y() { return MultiPoly::variable(kXY, 1); }
MultiPoly C(long num, long den = 1) { return MultiPoly::constant(kXY, Rational(num, den)); }

Rational at(const MultiPoly& p, long x, long y)
{
  std::vector<Integer> pt{Integer(x), Integer(y)};
  return p.evaluate(pt);
}

} // namespace

TEST_CASE("rational helpers")
{
  CHECK(floor_mod(Integer(-7), Integer(5)) == 3);
  CHECK(floor_mod(Integer(7), Integer(5)) == 2);
  CHECK(is_integer(make_rational(4, 2)));
  CHECK_FALSE(is_integer(Rational(1, 2)));
  CHECK_THROWS_AS(to_integer(Rational(1, 2)), Error);
  CHECK(parse_integer("-123456789012345678901234567890") ==
        Integer("-123456789012345678901234567890"));
  CHECK_THROWS_AS(parse_integer("12a"), Error);
  CHECK(to_string(make_rational(-3, 6)) == "-1/2");
}

TEST_CASE("arithmetic against hand expansion")
{
  // (x + y)^3 = x^3 + 3x^2y + 3xy^2 + y^3
  MultiPoly p = (X() + Y()).pow(3);
  CHECK(p.coefficient({3, 0}) == 1);
  CHECK(p.coefficient({2, 1}) == 3);
  CHECK(p.coefficient({1, 2}) == 3);
  CHECK(p.coefficient({0, 3}) == 1);
  CHECK(p.terms().size() == 4);
  CHECK(p.total_degree() == 3);

  MultiPoly q = (X() - Y()) * (X() + Y());
  CHECK(q == X() * X() - Y() * Y());
  CHECK((q - q).is_zero());
  CHECK(at(q, 5, 3) == 16);
}

TEST_CASE("y(y+1)/2 is integral with denominator 2")
{
  MultiPoly t = Y() * (Y() + C(1)) * Rational(1, 2);
  CHECK(t.denominator_lcm() == 2);
  for (long y = -6; y <= 6; ++y)
    CHECK(is_integer(at(t, 0, y)));
  CHECK(at(t, 0, 4) == 10);
  CHECK(at(t, 0, -4) == 6);
}

TEST_CASE("degrees and dependence")
{
  MultiPoly p = X() * X() * Y() + C(3);
  CHECK(p.degree_in(0) == 2);
  CHECK(p.degree_in(1) == 1);
  CHECK(p.depends_on(1));
  CHECK_FALSE(C(7).depends_on(0));
}

TEST_CASE("composition substitutes images")
{
  // p(x, y) = x*y; p(x + 1, x - y) = x^2 - xy + x - y
  MultiPoly p = X() * Y();
  std::vector<MultiPoly> images{X() + C(1), X() - Y()};
  MultiPoly r = p.compose(images);
  CHECK(r == X() * X() - X() * Y() + X() - Y());
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      CHECK(at(r, a, b) == (a + 1) * (a - b));
}

TEST_CASE("remap moves variables into a larger list")
{
  std::vector<std::string> big{"a", "x", "b", "y"};
  std::vector<std::size_t> idx{1, 3};
  MultiPoly r = (X() * Y() * Y()).remap(big, idx);
  CHECK(r.coefficient({0, 1, 0, 2}) == 1);
  CHECK(r.num_vars() == 4);
}

TEST_CASE("mismatched variable lists are rejected")
{
  MultiPoly a = X();
  MultiPoly b = MultiPoly::variable({"u"}, 0);
  CHECK_THROWS_AS(a += b, Error);
}

TEST_CASE("printing")
{
  CHECK(C(0).to_string() == "0");
  MultiPoly p = X() * Y() * Rational(-1, 2) + C(1);
  CHECK(p.to_string().find("x*y") != std::string::npos);
}

TEST_CASE("variable lists")
{
  CHECK(law_variables(2) == std::vector<std::string>{"x1", "x2", "y1", "y2"});
  CHECK(cocycle_variables(3) == std::vector<std::string>{"x1", "x2", "x3", "y1"});
}
