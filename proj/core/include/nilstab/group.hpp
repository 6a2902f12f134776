#pragma once

#include "nilstab/poly.hpp"
#include "nilstab/rational.hpp"

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nilstab {

/// Default seed of every sampled check ("N1L5" in ASCII).
inline constexpr std::uint64_t kDefaultSeed = 0x4E314C35;

/// Exponent vector of the canonical form a_1^{x_1} ... a_m^{x_m}.
struct GroupElement {
  std::vector<Integer> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<Integer> c) : coords(std::move(c)) {}
  GroupElement(std::initializer_list<long> c);

  static GroupElement identity(std::size_t hirsch);
  /// The i-th Mal'cev basis element (0-based).
  static GroupElement basis(std::size_t hirsch, std::size_t i);

  std::size_t size() const { return coords.size(); }
  bool is_identity() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.coords < b.coords; }
};

std::string to_string(const GroupElement& g);

/// A torsion-free finitely generated nilpotent group in Mal'cev coordinates.
///
/// law()[i] is the i-th coordinate of x*y as a polynomial in x1..xm, y1..ym.
/// The constructor checks only the shape of the law; group axioms,
/// triangularity and integrality are the business of validate_group().
class MalcevGroup {
public:
  MalcevGroup(std::size_t hirsch, std::vector<MultiPoly> law, std::string name = {});

  std::size_t hirsch() const { return hirsch_; }
  const std::vector<MultiPoly>& law() const { return law_; }
  const std::string& name() const { return name_; }

  /// law_i - x_i - y_i; depends only on coordinates < i for a triangular law.
  const MultiPoly& correction(std::size_t i) const { return corrections_[i]; }

  friend bool operator==(const MalcevGroup& a, const MalcevGroup& b)
  {
    return a.hirsch_ == b.hirsch_ && a.law_ == b.law_;
  }

private:
  std::size_t hirsch_;
  std::vector<MultiPoly> law_;
  std::vector<MultiPoly> corrections_;
  std::string name_;
};

using GroupRef = std::shared_ptr<const MalcevGroup>;

GroupElement multiply(const MalcevGroup& G, const GroupElement& x, const GroupElement& y);

/// Two-sided inverse by back-substitution through the triangular law.
GroupElement inverse(const MalcevGroup& G, const GroupElement& x);

/// x y x^{-1} y^{-1}.
GroupElement commutator(const MalcevGroup& G, const GroupElement& x, const GroupElement& y);

/// x^k for any integer k.
GroupElement power(const MalcevGroup& G, const GroupElement& x, const Integer& k);

/// The canonical homomorphism onto Z: reads off the first exponent.
Integer canonical_hom(const MalcevGroup& G, const GroupElement& x);

/// A homomorphism G -> Z together with an element it sends to 1 (when known).
struct IntegerHom {
  std::function<Integer(const GroupElement&)> eval;
  std::optional<GroupElement> unit;
  bool canonical = false;
  std::string name;

  Integer operator()(const GroupElement& g) const { return eval(g); }
};

/// canonical_hom packaged as an IntegerHom, with unit a_1.
IntegerHom canonical_character(const MalcevGroup& G);

/// Random sampling parameters shared by every sampled check in the library.
struct SampleOptions {
  std::size_t samples = 200;
  long bound = 3;
  std::uint64_t seed = kDefaultSeed;
};

class ElementSampler {
public:
  ElementSampler(std::size_t hirsch, long bound, std::uint64_t seed);

  GroupElement next();
  long next_coord();
  std::mt19937_64& engine() { return rng_; }

private:
  std::size_t hirsch_;
  long bound_;
  std::mt19937_64 rng_;
};

/// Outcome of a validation pass: every failed check with the elements that
/// witness it. Failures are data, never exceptions.
struct ValidationReport {
  struct Failure {
    std::string check;
    std::string detail;
    std::vector<GroupElement> witness;
  };

  std::string subject;
  std::vector<std::string> checks_run;
  std::vector<Failure> failures;
  std::vector<std::string> notes;
  /// Set when the checks performed amount to a proof (symbolic or a grid
  /// that exceeds the degree of the identity being tested).
  bool conclusive = false;

  bool passed() const { return failures.empty(); }
  void fail(std::string check, std::string detail, std::vector<GroupElement> witness = {});
  void merge(const ValidationReport& other);
  std::string summary() const;
};

/// Symbolic identity and triangularity checks, then sampled associativity,
/// two-sided inverses and integrality.
ValidationReport validate_group(const MalcevGroup& G, const SampleOptions& opts = {});

/// Quotient by the last basis element, which must be central.
MalcevGroup quotient_by_last(const MalcevGroup& G);

/// Z^m with the coordinatewise additive law.
MalcevGroup make_lattice(std::size_t m);

/// Integer Heisenberg group: the central extension of Z^2 by x2*y1, with law
/// (x1+y1, x2+y2, x3+y3+x2*y1).
MalcevGroup make_heisenberg3();

/// Resolves a builtin name: "lattice:<m>" (also "Z<m>") or "heisenberg3".
/// The result has passed validate_group; throws ValidationError otherwise.
MalcevGroup make_builtin(const std::string& name);

/// Throws ValidationError carrying the report summary when validation fails.
void require_valid(const MalcevGroup& G, const SampleOptions& opts = {});

} // namespace nilstab
