#include "nilstab/rational.hpp"

#include "nilstab/errors.hpp"

#include <cctype>

namespace nilstab {

Rational make_rational(const Integer& num, const Integer& den)
{
  if (den == 0)
    throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer to_integer(const Rational& q, std::string_view context)
{
  if (!is_integer(q)) {
    std::string msg = "value " + to_string(q) + " is not an integer";
    if (!context.empty())
      msg += " (" + std::string(context) + ")";
    throw Error(ErrorKind::NonIntegralValue, msg);
  }
  return q.get_num();
}

Integer floor_mod(const Integer& a, const Integer& m)
{
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer parse_integer(std::string_view text)
{
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start)
    throw Error(ErrorKind::ParseError, "empty integer literal");
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw Error(ErrorKind::ParseError, "invalid integer literal '" + s + "'");
  if (s[0] == '+')
    s.erase(0, 1);
  return Integer(s, 10);
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) { return q.get_str(10); }

std::int64_t to_int64(const Integer& z)
{
  if (!z.fits_slong_p())
    throw Error(ErrorKind::InvalidArgument, "integer " + to_string(z) + " does not fit in 64 bits");
  return static_cast<std::int64_t>(z.get_si());
}

} // namespace nilstab
