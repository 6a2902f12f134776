#pragma once

#include "nilstab/group.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace nilstab {

/// Integer 2-cocycle given by a polynomial p(x1..xm, y1): sigma(x, y) = p(x, alpha(y)).
/// Coefficients may be non-integral as long as the values on integers are integral.
class PolyCocycle {
public:
  PolyCocycle(GroupRef group, MultiPoly p, std::string name = {});

  const GroupRef& group() const { return group_; }
  const MultiPoly& poly() const { return poly_; }
  const std::string& name() const { return name_; }

  Rational value(const GroupElement& x, const GroupElement& y) const;
  /// Throws NonIntegralValue when the polynomial is not integral at (x, y).
  Integer operator()(const GroupElement& x, const GroupElement& y) const;

private:
  GroupRef group_;
  MultiPoly poly_;
  std::string name_;
};

/// Integer 2-cocycle known only through a pointwise evaluation procedure.
class KernelCocycle {
public:
  using Fn = std::function<Integer(const GroupElement&, const GroupElement&)>;

  KernelCocycle(GroupRef group, Fn fn, std::string name = {});

  const GroupRef& group() const { return group_; }
  const std::string& name() const { return name_; }
  Integer operator()(const GroupElement& x, const GroupElement& y) const { return fn_(x, y); }

private:
  GroupRef group_;
  Fn fn_;
  std::string name_;
};

using Cocycle = std::variant<PolyCocycle, KernelCocycle>;

Integer evaluate(const Cocycle& sigma, const GroupElement& x, const GroupElement& y);
const GroupRef& group_of(const Cocycle& sigma);
std::string name_of(const Cocycle& sigma);

/// Formal integer combination of bar symbols [a|b].
struct Chain2 {
  struct Term {
    Integer coef;
    GroupElement a;
    GroupElement b;
  };
  std::vector<Term> terms;

  void add(const Integer& coef, GroupElement a, GroupElement b);
  /// Sorts, merges like terms and drops zero coefficients.
  void normalize();
  bool empty() const { return terms.empty(); }
};

struct Chain1 {
  struct Term {
    Integer coef;
    GroupElement a;
  };
  std::vector<Term> terms;

  void add(const Integer& coef, GroupElement a);
  void normalize();
  bool empty() const { return terms.empty(); }
};

struct Chain3 {
  struct Term {
    Integer coef;
    GroupElement a;
    GroupElement b;
    GroupElement c;
  };
  std::vector<Term> terms;
};

/// d[a|b] = [b] - [ab] + [a], extended linearly and normalized.
Chain1 boundary2(const MalcevGroup& G, const Chain2& c);
/// d[a|b|c] = [b|c] - [ab|c] + [a|bc] - [a|b].
Chain2 boundary3(const MalcevGroup& G, const Chain3& c);
bool is_cycle(const MalcevGroup& G, const Chain2& c);

/// <sigma, c> = sum of coef * sigma(a, b). Defined on every chain.
Integer pair_cocycle_cycle(const Cocycle& sigma, const Chain2& c);

struct CocycleCheckOptions {
  SampleOptions sampling{500, 3, kDefaultSeed};
  /// Also evaluate on every triple with coordinates in [-grid_radius, grid_radius].
  bool grid = false;
  long grid_radius = 2;
};

/// Degree-2 coboundary identity sigma(y,z) - sigma(xy,z) + sigma(x,yz) - sigma(x,y) = 0,
/// normalization and integrality, on samples (and optionally a grid).
ValidationReport cocycle_check(const Cocycle& sigma, const CocycleCheckOptions& opts = {});

/// Skinniness with respect to alpha: sigma(x, y) depends only on x and alpha(y), and
/// sigma vanishes on ker(alpha) x ker(alpha).
ValidationReport skinny_check(const Cocycle& sigma, const IntegerHom& alpha,
                              const SampleOptions& opts = {500, 3, kDefaultSeed});

/// Pointwise k * sigma.
Cocycle scale_cocycle(const Cocycle& sigma, const Integer& k);
PolyCocycle scale_cocycle(const PolyCocycle& sigma, const Integer& k);

PolyCocycle zero_cocycle(GroupRef group);

/// "z2_skinny": x2*y1 on Z^2.
/// "heisenberg_skinny": the polynomial form of the non-torsion skinny class on the
/// Heisenberg group produced by lemma_hard_cocycle on (Z^2, x2*y1), namely
/// -x3*y1 - x2*y1*(y1+1)/2. Its coefficients have denominator 2.
PolyCocycle builtin_cocycle(const std::string& kind);

/// [(0,1)|(1,0)] - [(1,0)|(0,1)] in Z^2.
Chain2 voiculescu_cycle();

/// c_k = [a|z^k] - [z^k|a] with a = a_1 and z = a_m, the last (central) basis element.
Chain2 central_cycle(std::size_t hirsch, const Integer& k);

} // namespace nilstab
