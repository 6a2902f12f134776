#include "nilstab/poly.hpp"

#include "nilstab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nilstab {

MultiPoly::MultiPoly(std::vector<std::string> variables) : variables_(std::move(variables)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> variables, const Rational& c)
{
  MultiPoly p(std::move(variables));
  p.add_term(Exponents(p.num_vars(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> variables, std::size_t index)
{
  MultiPoly p(std::move(variables));
  if (index >= p.num_vars())
    throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  Exponents e(p.num_vars(), 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

void MultiPoly::add_term(const Exponents& exps, const Rational& c)
{
  if (exps.size() != num_vars())
    throw Error(ErrorKind::InvalidArgument, "exponent vector has wrong length");
  if (c == 0)
    return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Rational MultiPoly::coefficient(const Exponents& exps) const
{
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::check_compatible(const MultiPoly& other) const
{
  if (variables_ != other.variables_)
    throw Error(ErrorKind::InvalidArgument, "polynomials are over different variables");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other)
{
  check_compatible(other);
  for (const auto& [e, c] : other.terms_)
    add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other)
{
  check_compatible(other);
  for (const auto& [e, c] : other.terms_)
    add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c)
{
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_)
    coef *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const
{
  MultiPoly r = *this;
  r *= -1;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
  a.check_compatible(b);
  MultiPoly r(a.variables_);
  MultiPoly::Exponents e(a.num_vars());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b)
{
  return a.variables_ == b.variables_ && a.terms_ == b.terms_;
}

MultiPoly MultiPoly::pow(unsigned k) const
{
  MultiPoly result = constant(variables_, 1);
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1u)
      result = result * base;
    k >>= 1;
    if (k > 0)
      base = base * base;
  }
  return result;
}

Rational MultiPoly::evaluate(std::span<const Integer> point) const
{
  if (point.size() != num_vars())
    throw Error(ErrorKind::InvalidArgument, "evaluation point has wrong length");
  Rational sum = 0;
  Integer mono;
  Integer power;
  for (const auto& [e, c] : terms_) {
    mono = 1;
    for (std::size_t i = 0; i < e.size() && mono != 0; ++i) {
      if (e[i] == 0)
        continue;
      mpz_pow_ui(power.get_mpz_t(), point[i].get_mpz_t(), e[i]);
      mono *= power;
    }
    if (mono != 0)
      sum += c * Rational(mono);
  }
  return sum;
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> images) const
{
  if (images.size() != num_vars())
    throw Error(ErrorKind::InvalidArgument, "compose needs one image per variable");
  if (images.empty())
    return *this;
  const auto& target = images[0].variables();
  for (const auto& img : images)
    if (img.variables() != target)
      throw Error(ErrorKind::InvalidArgument, "compose images must share variables");

  // powers[i][k] = images[i]^k, filled lazily.
  std::vector<std::vector<MultiPoly>> powers(num_vars());
  auto power_of = [&](std::size_t i, unsigned k) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty())
      cache.push_back(constant(target, 1));
    while (cache.size() <= k)
      cache.push_back(cache.back() * images[i]);
    return cache[k];
  };

  MultiPoly result(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0)
        term = term * power_of(i, e[i]);
    result += term;
  }
  return result;
}

MultiPoly MultiPoly::remap(std::vector<std::string> target,
                           std::span<const std::size_t> index_map) const
{
  if (index_map.size() != num_vars())
    throw Error(ErrorKind::InvalidArgument, "remap needs one index per variable");
  MultiPoly r(std::move(target));
  for (std::size_t idx : index_map)
    if (idx >= r.num_vars())
      throw Error(ErrorKind::InvalidArgument, "remap index out of range");
  Exponents ne(r.num_vars());
  for (const auto& [e, c] : terms_) {
    std::fill(ne.begin(), ne.end(), 0u);
    for (std::size_t i = 0; i < e.size(); ++i)
      ne[index_map[i]] += e[i];
    r.add_term(ne, c);
  }
  return r;
}

unsigned MultiPoly::total_degree() const
{
  unsigned deg = 0;
  for (const auto& [e, c] : terms_) {
    unsigned d = 0;
    for (auto x : e)
      d += x;
    deg = std::max(deg, d);
  }
  return deg;
}

unsigned MultiPoly::degree_in(std::size_t var) const
{
  unsigned deg = 0;
  for (const auto& [e, c] : terms_)
    deg = std::max(deg, e.at(var));
  return deg;
}

Integer MultiPoly::denominator_lcm() const
{
  Integer l = 1;
  for (const auto& [e, c] : terms_)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

std::string MultiPoly::to_string() const
{
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<const TermMap::value_type*> order;
  for (const auto& t : terms_)
    order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    unsigned da = 0, db = 0;
    for (auto x : a->first)
      da += x;
    for (auto x : b->first)
      db += x;
    return da > db;
  });
  for (const auto* t : order) {
    const auto& [e, c] = *t;
    Rational mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool constant_term = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    bool wrote = false;
    if (mag != 1 || constant_term) {
      os << nilstab::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      if (wrote)
        os << '*';
      os << variables_[i];
      if (e[i] > 1)
        os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::vector<std::string> law_variables(std::size_t hirsch)
{
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= hirsch; ++i)
    v.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= hirsch; ++i)
    v.push_back("y" + std::to_string(i));
  return v;
}

std::vector<std::string> cocycle_variables(std::size_t hirsch)
{
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= hirsch; ++i)
    v.push_back("x" + std::to_string(i));
  v.push_back("y1");
  return v;
}

} // namespace nilstab
