#include "nilstab/extensions.hpp"

#include "nilstab/errors.hpp"

#include <sstream>

namespace nilstab {

GroupElement CentralExtension::embed(const Integer& k) const
{
  GroupElement g = GroupElement::identity(total->hirsch());
  g.coords.back() = k;
  return g;
}

GroupElement CentralExtension::project(const GroupElement& g) const
{
  if (g.size() != total->hirsch())
    throw Error(ErrorKind::InvalidArgument, "element is not in the extension group");
  return GroupElement(std::vector<Integer>(g.coords.begin(), g.coords.end() - 1));
}

GroupElement CentralExtension::lift(const GroupElement& g, const Integer& s) const
{
  if (g.size() != base->hirsch())
    throw Error(ErrorKind::InvalidArgument, "element is not in the base group");
  GroupElement out = g;
  out.coords.push_back(s);
  return out;
}

CentralExtension central_extension(const GroupRef& base, const PolyCocycle& sigma,
                                   const ExtensionOptions& opts)
{
  if (!base || !(*base == *sigma.group()))
    throw Error(ErrorKind::InvalidArgument, "cocycle is defined on a different group");
  ValidationReport check = cocycle_check(sigma, opts.cocycle_check);
  if (!check.passed())
    throw Error(ErrorKind::InvalidCocycle, check.summary());

  const std::size_t m = base->hirsch();
  const auto vars = law_variables(m + 1);
  // Base law variables x1..xm, y1..ym sit at 0..m-1 and m+1..2m in the new list.
  std::vector<std::size_t> law_map(2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    law_map[j] = j;
    law_map[m + j] = m + 1 + j;
  }
  std::vector<std::size_t> cocycle_map(m + 1);
  for (std::size_t j = 0; j < m; ++j)
    cocycle_map[j] = j;
  cocycle_map[m] = m + 1;

  std::vector<MultiPoly> law;
  for (std::size_t i = 0; i < m; ++i)
    law.push_back(base->law()[i].remap(vars, law_map));
  law.push_back(MultiPoly::variable(vars, m) + MultiPoly::variable(vars, 2 * m + 1) +
                sigma.poly().remap(vars, cocycle_map));

  std::string name = (base->name().empty() ? std::string("G") : base->name()) + "_ext(" +
                     (sigma.name().empty() ? std::string("sigma") : sigma.name()) + ")";
  auto total = std::make_shared<const MalcevGroup>(m + 1, std::move(law), std::move(name));
  ValidationReport group_report = validate_group(*total, opts.group_check);
  if (!group_report.passed())
    throw Error(ErrorKind::InvalidCocycle, group_report.summary());
  return CentralExtension{base, std::move(total), sigma};
}

CentralExtension central_extension(const PolyCocycle& sigma, const ExtensionOptions& opts)
{
  return central_extension(sigma.group(), sigma, opts);
}

Section canonical_section(const CentralExtension& E)
{
  return [E](const GroupElement& g) { return E.lift(g, 0); };
}

KernelCocycle section_cocycle(const CentralExtension& E, Section theta, const SampleOptions& opts)
{
  auto checked = [E, theta](const GroupElement& g) {
    GroupElement t = theta(g);
    if (t.size() != E.total->hirsch() || E.project(t) != g)
      throw Error(ErrorKind::NotASection,
                  "phi(theta(g)) != g for g = " + to_string(g) + " (theta(g) = " + to_string(t) + ")");
    return t;
  };

  ElementSampler sampler(E.base->hirsch(), opts.bound, opts.seed);
  checked(GroupElement::identity(E.base->hirsch()));
  for (std::size_t s = 0; s < opts.samples; ++s)
    checked(sampler.next());

  auto fn = [E, checked](const GroupElement& g, const GroupElement& h) {
    const MalcevGroup& T = *E.total;
    GroupElement prod = multiply(T, multiply(T, checked(g), checked(h)),
                                 inverse(T, checked(multiply(*E.base, g, h))));
    if (!E.project(prod).is_identity())
      throw Error(ErrorKind::Internal, "theta(g)theta(h)theta(gh)^{-1} is not central");
    return prod.coords.back();
  };
  return KernelCocycle(E.base, fn, "section_cocycle");
}

GroupElement scale_central(const GroupElement& g, const Integer& k)
{
  GroupElement out = g;
  out.coords.back() *= k;
  return out;
}

namespace {

// Coordinates for (Z x Z x ker alpha) x|_eta Z, where Z x ker alpha is
// represented inside the extension group through psi(x, y) = iota(x) * (y, 0):
// `core` is an extension element with alpha(phi(core)) = 0, and `top` is the
// coordinate of the new central Z.
struct TwistedElement {
  Integer top;
  GroupElement core;
  Integer shift;
};

class TwistedModel {
public:
  TwistedModel(GroupRef total, GroupElement a)
      : total_(std::move(total)), a_(std::move(a)), a_inv_(inverse(*total_, a_))
  {
  }

  // eta(X, u) = (X + x(u), a u a^{-1}) where psi^{-1}(u) = (x(u), y(u)); with the
  // canonical lift x(u) is the central coordinate of u.
  void eta(Integer& top, GroupElement& core, Integer k) const
  {
    const MalcevGroup& T = *total_;
    while (k > 0) {
      top += core.coords.back();
      core = multiply(T, multiply(T, a_, core), a_inv_);
      --k;
    }
    while (k < 0) {
      core = multiply(T, multiply(T, a_inv_, core), a_);
      top -= core.coords.back();
      ++k;
    }
  }

  TwistedElement mul(const TwistedElement& l, const TwistedElement& r) const
  {
    Integer top = r.top;
    GroupElement core = r.core;
    eta(top, core, l.shift);
    return {l.top + top, multiply(*total_, l.core, core), l.shift + r.shift};
  }

  TwistedElement inv(const TwistedElement& g) const
  {
    Integer top = -g.top;
    GroupElement core = inverse(*total_, g.core);
    eta(top, core, -g.shift);
    return {top, core, -g.shift};
  }

  const GroupElement& a() const { return a_; }
  const GroupElement& a_inv() const { return a_inv_; }
  const MalcevGroup& total() const { return *total_; }

private:
  GroupRef total_;
  GroupElement a_;
  GroupElement a_inv_;
};

IntegerHom resolve_unit(const MalcevGroup& G, IntegerHom alpha)
{
  if (alpha.unit) {
    if (alpha(*alpha.unit) != 1)
      throw Error(ErrorKind::NotSurjective, "supplied unit does not map to 1");
    return alpha;
  }
  for (std::size_t i = 0; i < G.hirsch(); ++i) {
    GroupElement b = GroupElement::basis(G.hirsch(), i);
    Integer v = alpha(b);
    if (v == 1) {
      alpha.unit = b;
      return alpha;
    }
    if (v == -1) {
      alpha.unit = inverse(G, b);
      return alpha;
    }
  }
  throw Error(ErrorKind::NotSurjective, "no basis element maps to +-1");
}

} // namespace

KernelCocycle lemma_hard_cocycle(const CentralExtension& E, const IntegerHom& alpha_in,
                                 LemmaSection section, const SampleOptions& precheck)
{
  const IntegerHom alpha = resolve_unit(*E.base, alpha_in);
  ValidationReport skinny = skinny_check(E.cocycle, alpha, precheck);
  if (!skinny.passed())
    throw Error(ErrorKind::NotSkinny, skinny.summary());

  auto model = std::make_shared<const TwistedModel>(E.total, E.lift(*alpha.unit, 0));
  auto total_alpha = [E, alpha](const GroupElement& g) { return alpha(E.project(g)); };

  auto theta = [model, total_alpha, section](const GroupElement& g) -> TwistedElement {
    const MalcevGroup& T = model->total();
    Integer z = total_alpha(g);
    if (section == LemmaSection::KernelFirst) {
      GroupElement u = multiply(T, g, power(T, model->a(), -z));
      return {0, u, z};
    }
    GroupElement u = multiply(T, power(T, model->a(), -z), g);
    Integer top = 0;
    model->eta(top, u, z);
    return {top, u, z};
  };

  auto fn = [model, theta](const GroupElement& g, const GroupElement& h) {
    const MalcevGroup& T = model->total();
    TwistedElement prod =
        model->mul(model->mul(theta(g), theta(h)), model->inv(theta(multiply(T, g, h))));
    if (prod.shift != 0 || !prod.core.is_identity())
      throw Error(ErrorKind::Internal, "section defect is not central in the twisted model");
    return prod.top;
  };
  std::string name = section == LemmaSection::Normalized ? "lemma_hard" : "lemma_hard_kernel_first";
  return KernelCocycle(E.total, fn, name);
}

namespace {

// Inverse of the Vandermonde matrix on nodes -D..D: maps values to monomial coefficients.
std::vector<std::vector<Rational>> inverse_vandermonde(long D)
{
  const std::size_t N = static_cast<std::size_t>(2 * D + 1);
  std::vector<std::vector<Rational>> aug(N, std::vector<Rational>(2 * N));
  for (std::size_t i = 0; i < N; ++i) {
    Rational node(static_cast<long>(i) - D);
    Rational pw = 1;
    for (std::size_t k = 0; k < N; ++k) {
      aug[i][k] = pw;
      pw *= node;
    }
    aug[i][N + i] = 1;
  }
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    while (aug[piv][col] == 0)
      ++piv;
    std::swap(aug[piv], aug[col]);
    Rational inv = 1 / aug[col][col];
    for (auto& v : aug[col])
      v *= inv;
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col || aug[r][col] == 0)
        continue;
      Rational f = aug[r][col];
      for (std::size_t k = 0; k < 2 * N; ++k)
        aug[r][k] -= f * aug[col][k];
    }
  }
  std::vector<std::vector<Rational>> out(N, std::vector<Rational>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k)
      out[i][k] = aug[i][N + k];
  return out;
}

} // namespace

PolyCocycle interpolate_polynomial_cocycle(const KernelCocycle& omega,
                                           const InterpolationOptions& opts)
{
  const MalcevGroup& G = *omega.group();
  const std::size_t m = G.hirsch();
  const IntegerHom alpha = canonical_character(G);
  {
    ValidationReport skinny = skinny_check(omega, alpha, {100, 3, opts.verification.seed});
    if (!skinny.passed())
      throw Error(ErrorKind::NotSkinny, skinny.summary());
  }

  const long D = static_cast<long>(opts.degree_bound);
  const std::size_t N = static_cast<std::size_t>(2 * D + 1);
  const std::size_t dims = m + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dims; ++i)
    total *= N;

  // values[idx], idx = sum_k digit_k N^k, digit_k = coordinate k + D; the last
  // axis is y1 (y = a_1^{y1} = (y1, 0, ..., 0)).
  std::vector<Rational> values(total);
  std::vector<long> digits(dims, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = 0; k < dims; ++k) {
      digits[k] = static_cast<long>(rest % N) - D;
      rest /= N;
    }
    GroupElement x, y = GroupElement::identity(m);
    for (std::size_t k = 0; k < m; ++k)
      x.coords.emplace_back(digits[k]);
    y.coords[0] = digits[m];
    values[idx] = omega(x, y);
  }

  const auto vinv = inverse_vandermonde(D);
  std::size_t stride = 1;
  std::vector<Rational> line(N), coeffs(N);
  for (std::size_t axis = 0; axis < dims; ++axis, stride *= N) {
    for (std::size_t base = 0; base < total; ++base) {
      if ((base / stride) % N != 0)
        continue;
      for (std::size_t i = 0; i < N; ++i)
        line[i] = values[base + i * stride];
      for (std::size_t k = 0; k < N; ++k) {
        coeffs[k] = 0;
        for (std::size_t i = 0; i < N; ++i)
          if (vinv[k][i] != 0 && line[i] != 0)
            coeffs[k] += vinv[k][i] * line[i];
      }
      for (std::size_t k = 0; k < N; ++k)
        values[base + k * stride] = coeffs[k];
    }
  }

  MultiPoly p(cocycle_variables(m));
  MultiPoly::Exponents e(dims);
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (values[idx] == 0)
      continue;
    std::size_t rest = idx;
    for (std::size_t k = 0; k < dims; ++k) {
      e[k] = static_cast<std::uint32_t>(rest % N);
      rest /= N;
    }
    p.add_term(e, values[idx]);
  }
  if (p.total_degree() > opts.degree_bound)
    throw Error(ErrorKind::DegreeBoundTooSmall,
                "interpolant has total degree " + std::to_string(p.total_degree()) +
                    " > " + std::to_string(opts.degree_bound));

  PolyCocycle result(omega.group(), p, omega.name().empty() ? "interpolated" : omega.name() + "_poly");
  ElementSampler sampler(m, opts.verification.bound, opts.verification.seed);
  for (std::size_t s = 0; s < opts.verification.samples; ++s) {
    GroupElement x = sampler.next(), y = sampler.next();
    Rational fitted = result.value(x, y);
    Integer actual = omega(x, y);
    if (fitted != actual)
      throw Error(ErrorKind::DegreeBoundTooSmall,
                  "fit disagrees at " + to_string(x) + ", " + to_string(y) + ": " +
                      to_string(fitted) + " vs " + to_string(actual));
  }

  ValidationReport check = cocycle_check(result);
  if (!check.passed())
    throw Error(ErrorKind::InvalidCocycle, check.summary());
  return result;
}

} // namespace nilstab
