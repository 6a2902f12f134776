#pragma once

#include "nilstab/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nilstab {

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by exponent vectors whose length equals the number of
/// variables; zero coefficients are never stored. Two polynomials can only be
/// combined when they are over the same variable list.
class MultiPoly {
public:
  using Exponents = std::vector<std::uint32_t>;
  using TermMap = std::map<Exponents, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables);

  static MultiPoly constant(std::vector<std::string> variables, const Rational& c);
  static MultiPoly variable(std::vector<std::string> variables, std::size_t index);

  std::size_t num_vars() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * monomial(exps); cancels to nothing when the sum is zero.
  void add_term(const Exponents& exps, const Rational& c);
  Rational coefficient(const Exponents& exps) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator-() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned k) const;

  Rational evaluate(std::span<const Integer> point) const;

  /// Substitutes images[i] for variable i. All images share one variable list,
  /// which becomes the variable list of the result.
  MultiPoly compose(std::span<const MultiPoly> images) const;

  /// Reinterprets the polynomial over `target` variables; variable i moves to
  /// position index_map[i].
  MultiPoly remap(std::vector<std::string> target, std::span<const std::size_t> index_map) const;

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

  /// Least common multiple of all coefficient denominators (1 for the zero polynomial).
  Integer denominator_lcm() const;

  std::string to_string() const;

private:
  void check_compatible(const MultiPoly& other) const;

  std::vector<std::string> variables_;
  TermMap terms_;
};

/// x1..xm, y1..ym: the variable list of a group multiplication law.
std::vector<std::string> law_variables(std::size_t hirsch);

/// x1..xm, y1: the variable list of a skinny polynomial cocycle.
std::vector<std::string> cocycle_variables(std::size_t hirsch);

} // namespace nilstab
