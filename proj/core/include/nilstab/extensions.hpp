#pragma once

#include "nilstab/cohomology.hpp"
#include "nilstab/group.hpp"

#include <functional>

namespace nilstab {

/// e -> Z -> total -> base -> e, with total = base x Z twisted by the cocycle:
/// (g, s)(h, t) = (gh, s + t + sigma(g, h)). The central coordinate is last.
struct CentralExtension {
  GroupRef base;
  GroupRef total;
  PolyCocycle cocycle;

  /// iota(k) = (0, ..., 0, k).
  GroupElement embed(const Integer& k) const;
  /// phi: drops the central coordinate.
  GroupElement project(const GroupElement& g) const;
  /// (g, s) in total coordinates.
  GroupElement lift(const GroupElement& g, const Integer& s = 0) const;
};

struct ExtensionOptions {
  CocycleCheckOptions cocycle_check{{500, 3, kDefaultSeed}, true, 2};
  SampleOptions group_check{200, 3, kDefaultSeed};
};

/// Builds the extension group from a polynomial cocycle on `base`. Throws
/// InvalidCocycle when sigma fails its checks or the resulting law is not a group.
CentralExtension central_extension(const GroupRef& base, const PolyCocycle& sigma,
                                   const ExtensionOptions& opts = {});
CentralExtension central_extension(const PolyCocycle& sigma, const ExtensionOptions& opts = {});

using Section = std::function<GroupElement(const GroupElement&)>;

/// theta(g) = (g, 0).
Section canonical_section(const CentralExtension& E);

/// The cocycle (g, h) -> central part of theta(g) theta(h) theta(gh)^{-1}.
/// theta is checked to be a section on samples up front and on every evaluation;
/// a failure throws NotASection naming g.
KernelCocycle section_cocycle(const CentralExtension& E, Section theta,
                              const SampleOptions& opts = {});

/// The map (g, s) -> (g, k*s) from the extension by sigma into the extension by k*sigma.
GroupElement scale_central(const GroupElement& g, const Integer& k);

enum class LemmaSection {
  /// g = a^z * u with u in ker(alpha o phi); yields a representative that depends
  /// only on (g, alpha(h)).
  Normalized,
  /// g = psi(x, y) * a^z, the section written into the semidirect model directly;
  /// the representative depends on (alpha(g), h) instead.
  KernelFirst,
};

/// Non-torsion skinny class on E.total built from the semidirect model
/// (Z x Z x ker alpha) x|_eta Z of the extension.
/// Throws NotSkinny if E.cocycle is not skinny for alpha and NotSurjective if
/// alpha has no unit.
KernelCocycle lemma_hard_cocycle(const CentralExtension& E, const IntegerHom& alpha,
                                 LemmaSection section = LemmaSection::Normalized,
                                 const SampleOptions& precheck = {200, 3, kDefaultSeed});

struct InterpolationOptions {
  unsigned degree_bound = 4;
  SampleOptions verification{500, 6, kDefaultSeed ^ 0x1f7};
};

/// Fits p(x1..xm, y1) with total degree <= degree_bound to a skinny kernel cocycle
/// (skinny for the canonical homomorphism) by exact interpolation on
/// [-D, D]^{m+1}, then verifies it on fresh samples.
/// Throws NotSkinny, DegreeBoundTooSmall or InvalidCocycle.
PolyCocycle interpolate_polynomial_cocycle(const KernelCocycle& omega,
                                           const InterpolationOptions& opts = {});

} // namespace nilstab
