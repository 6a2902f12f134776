#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace nilstab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws InvalidArgument on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

bool is_integer(const Rational& q);

/// Numerator of q. Throws NonIntegralValue unless q is an integer.
Integer to_integer(const Rational& q, std::string_view context = {});

/// Representative of a modulo m in [0, m). m must be positive.
Integer floor_mod(const Integer& a, const Integer& m);

Integer parse_integer(std::string_view text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

/// Exact conversion; throws InvalidArgument when z does not fit.
std::int64_t to_int64(const Integer& z);

} // namespace nilstab
