#include "nilstab/cohomology.hpp"

#include "nilstab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nilstab {

PolyCocycle::PolyCocycle(GroupRef group, MultiPoly p, std::string name)
    : group_(std::move(group)), poly_(std::move(p)), name_(std::move(name))
{
  if (!group_)
    throw Error(ErrorKind::InvalidArgument, "cocycle needs a group");
  if (poly_.variables() != cocycle_variables(group_->hirsch()))
    throw Error(ErrorKind::InvalidArgument, "cocycle polynomial must be over x1..xm, y1");
}

Rational PolyCocycle::value(const GroupElement& x, const GroupElement& y) const
{
  const std::size_t m = group_->hirsch();
  if (x.size() != m || y.size() != m)
    throw Error(ErrorKind::InvalidArgument, "cocycle argument has wrong Hirsch length");
  std::vector<Integer> point(x.coords);
  point.push_back(y.coords[0]);
  return poly_.evaluate(point);
}

Integer PolyCocycle::operator()(const GroupElement& x, const GroupElement& y) const
{
  return to_integer(value(x, y), "cocycle at " + to_string(x) + ", " + to_string(y));
}

KernelCocycle::KernelCocycle(GroupRef group, Fn fn, std::string name)
    : group_(std::move(group)), fn_(std::move(fn)), name_(std::move(name))
{
  if (!group_ || !fn_)
    throw Error(ErrorKind::InvalidArgument, "kernel cocycle needs a group and a function");
}

Integer evaluate(const Cocycle& sigma, const GroupElement& x, const GroupElement& y)
{
  return std::visit([&](const auto& s) { return s(x, y); }, sigma);
}

const GroupRef& group_of(const Cocycle& sigma)
{
  return std::visit([](const auto& s) -> const GroupRef& { return s.group(); }, sigma);
}

std::string name_of(const Cocycle& sigma)
{
  return std::visit([](const auto& s) { return s.name(); }, sigma);
}

void Chain2::add(const Integer& coef, GroupElement a, GroupElement b)
{
  if (coef != 0)
    terms.push_back({coef, std::move(a), std::move(b)});
}

void Chain2::normalize()
{
  std::sort(terms.begin(), terms.end(), [](const Term& l, const Term& r) {
    return std::tie(l.a, l.b) < std::tie(r.a, r.b);
  });
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().a == t.a && merged.back().b == t.b)
      merged.back().coef += t.coef;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
  terms = std::move(merged);
}

void Chain1::add(const Integer& coef, GroupElement a)
{
  if (coef != 0)
    terms.push_back({coef, std::move(a)});
}

void Chain1::normalize()
{
  std::sort(terms.begin(), terms.end(), [](const Term& l, const Term& r) { return l.a < r.a; });
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().a == t.a)
      merged.back().coef += t.coef;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
  terms = std::move(merged);
}

Chain1 boundary2(const MalcevGroup& G, const Chain2& c)
{
  Chain1 out;
  for (const auto& t : c.terms) {
    out.add(t.coef, t.b);
    out.add(-t.coef, multiply(G, t.a, t.b));
    out.add(t.coef, t.a);
  }
  out.normalize();
  return out;
}

Chain2 boundary3(const MalcevGroup& G, const Chain3& c)
{
  Chain2 out;
  for (const auto& t : c.terms) {
    out.add(t.coef, t.b, t.c);
    out.add(-t.coef, multiply(G, t.a, t.b), t.c);
    out.add(t.coef, t.a, multiply(G, t.b, t.c));
    out.add(-t.coef, t.a, t.b);
  }
  out.normalize();
  return out;
}

bool is_cycle(const MalcevGroup& G, const Chain2& c) { return boundary2(G, c).empty(); }

Integer pair_cocycle_cycle(const Cocycle& sigma, const Chain2& c)
{
  Integer total = 0;
  for (const auto& t : c.terms)
    total += t.coef * evaluate(sigma, t.a, t.b);
  return total;
}

namespace {

constexpr std::size_t kMaxWitnesses = 3;
// Grid evaluations beyond this many triples are skipped with a note.
constexpr double kMaxGridTriples = 2.5e6;

class Recorder {
public:
  Recorder(ValidationReport& r, std::string check) : report_(r), check_(std::move(check)) {}
  Recorder(const Recorder&) = delete;
  Recorder& operator=(const Recorder&) = delete;
  ~Recorder()
  {
    if (count_ > kMaxWitnesses)
      report_.notes.push_back(check_ + ": " + std::to_string(count_ - kMaxWitnesses) +
                              " further failures not listed");
  }

  void operator()(std::string detail, std::vector<GroupElement> witness)
  {
    if (count_++ < kMaxWitnesses)
      report_.fail(check_, std::move(detail), std::move(witness));
  }

private:
  ValidationReport& report_;
  std::string check_;
  std::size_t count_ = 0;
};

struct TripleChecker {
  const Cocycle& sigma;
  const MalcevGroup& G;
  GroupElement e;
  Recorder identity;
  Recorder normalization;
  Recorder integrality;

  TripleChecker(const Cocycle& s, ValidationReport& r)
      : sigma(s), G(*group_of(s)), e(GroupElement::identity(G.hirsch())),
        identity(r, "cocycle identity"), normalization(r, "normalization"),
        integrality(r, "integrality")
  {
  }

  void check(const GroupElement& x, const GroupElement& y, const GroupElement& z)
  {
    try {
      const GroupElement xy = multiply(G, x, y);
      const GroupElement yz = multiply(G, y, z);
      Integer d = evaluate(sigma, y, z) - evaluate(sigma, xy, z) + evaluate(sigma, x, yz) -
                  evaluate(sigma, x, y);
      if (d != 0)
        identity("coboundary equals " + to_string(d), {x, y, z});
      Integer left = evaluate(sigma, e, x);
      Integer right = evaluate(sigma, x, e);
      if (left != 0 || right != 0)
        normalization("sigma(e,x) = " + to_string(left) + ", sigma(x,e) = " + to_string(right),
                      {x});
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NonIntegralValue)
        throw;
      integrality(err.what(), {x, y, z});
    }
  }
};

// Odometer over all vectors in [-r, r]^len.
class GridWalker {
public:
  GridWalker(std::size_t len, long r) : r_(r), cur_(len, -r) {}
  const std::vector<long>& current() const { return cur_; }
  bool advance()
  {
    for (std::size_t i = 0; i < cur_.size(); ++i) {
      if (cur_[i] < r_) {
        ++cur_[i];
        return true;
      }
      cur_[i] = -r_;
    }
    return false;
  }

private:
  long r_;
  std::vector<long> cur_;
};

GroupElement slice(const std::vector<long>& v, std::size_t from, std::size_t len)
{
  GroupElement g;
  for (std::size_t i = 0; i < len; ++i)
    g.coords.emplace_back(v[from + i]);
  return g;
}

// sigma(y,z) - sigma(xy,z) + sigma(x,yz) - sigma(x,y) as a polynomial in
// x1..xm, y1..ym, z1 (a polynomial cocycle only reads z through z1).
MultiPoly identity_polynomial(const PolyCocycle& sigma)
{
  const MalcevGroup& G = *sigma.group();
  const std::size_t m = G.hirsch();
  std::vector<std::string> vars = law_variables(m);
  vars.push_back("z1");
  auto var = [&](std::size_t i) { return MultiPoly::variable(vars, i); };
  const std::size_t z1 = 2 * m;

  std::vector<std::size_t> law_map(2 * m);
  for (std::size_t i = 0; i < 2 * m; ++i)
    law_map[i] = i;

  std::vector<MultiPoly> at_y_z, at_xy_z, at_x_yz, at_x_y;
  for (std::size_t i = 0; i < m; ++i) {
    at_y_z.push_back(var(m + i));
    at_xy_z.push_back(G.law()[i].remap(vars, law_map));
    at_x_yz.push_back(var(i));
    at_x_y.push_back(var(i));
  }
  at_y_z.push_back(var(z1));
  at_xy_z.push_back(var(z1));
  at_x_yz.push_back(var(m) + var(z1));
  at_x_y.push_back(var(m));

  const MultiPoly& p = sigma.poly();
  return p.compose(at_y_z) - p.compose(at_xy_z) + p.compose(at_x_yz) - p.compose(at_x_y);
}

} // namespace

ValidationReport cocycle_check(const Cocycle& sigma, const CocycleCheckOptions& opts)
{
  ValidationReport report;
  report.subject = "cocycle " + name_of(sigma);
  const MalcevGroup& G = *group_of(sigma);
  const std::size_t m = G.hirsch();
  const auto* poly = std::get_if<PolyCocycle>(&sigma);

  {
    TripleChecker checker(sigma, report);
    report.checks_run.push_back("cocycle identity (sampled)");
    report.checks_run.push_back("normalization (sampled)");
    report.checks_run.push_back("integrality (sampled)");
    ElementSampler sampler(m, opts.sampling.bound, opts.sampling.seed);
    for (std::size_t s = 0; s < opts.sampling.samples; ++s) {
      GroupElement x = sampler.next(), y = sampler.next(), z = sampler.next();
      checker.check(x, y, z);
    }

    if (opts.grid) {
      const long r = opts.grid_radius;
      // A polynomial cocycle reads z only through z1, so the other z-coordinates stay 0.
      const std::size_t free_coords = poly ? 2 * m + 1 : 3 * m;
      double count = 1;
      for (std::size_t i = 0; i < free_coords; ++i)
        count *= static_cast<double>(2 * r + 1);
      if (count > kMaxGridTriples) {
        report.notes.push_back("grid mode skipped: " + std::to_string(static_cast<long long>(count)) +
                               " triples exceed the cap");
      } else {
        report.checks_run.push_back("cocycle identity (grid radius " + std::to_string(r) + ")");
        GridWalker walker(free_coords, r);
        do {
          const auto& v = walker.current();
          GroupElement x = slice(v, 0, m), y = slice(v, m, m);
          GroupElement z = poly ? GroupElement::identity(m) : slice(v, 2 * m, m);
          if (poly)
            z.coords[0] = v[2 * m];
          checker.check(x, y, z);
        } while (walker.advance());

        if (poly) {
          MultiPoly id = identity_polynomial(*poly);
          unsigned max_deg = 0;
          for (std::size_t i = 0; i < id.num_vars(); ++i)
            max_deg = std::max(max_deg, id.degree_in(i));
          if (max_deg <= static_cast<unsigned>(2 * r)) {
            report.notes.push_back("grid is conclusive: identity polynomial has degree " +
                                   std::to_string(max_deg) + " per variable");
            report.conclusive = true;
          } else {
            report.notes.push_back("grid is not conclusive: identity polynomial has degree " +
                                   std::to_string(max_deg) + " in some variable");
          }
        }
      }
    }
  }

  if (poly) {
    // Symbolic normalization: p(0, y1) = 0 and p(x, 0) = 0.
    report.checks_run.push_back("normalization (symbolic)");
    const auto vars = cocycle_variables(m);
    std::vector<MultiPoly> x_zero, y_zero;
    for (std::size_t i = 0; i <= m; ++i) {
      MultiPoly v = MultiPoly::variable(vars, i);
      x_zero.push_back(i < m ? MultiPoly(vars) : v);
      y_zero.push_back(i < m ? v : MultiPoly(vars));
    }
    MultiPoly at_e_y = poly->poly().compose(x_zero);
    MultiPoly at_x_e = poly->poly().compose(y_zero);
    if (!at_e_y.is_zero() || !at_x_e.is_zero()) {
      bool already = std::any_of(report.failures.begin(), report.failures.end(),
                                 [](const auto& f) { return f.check == "normalization"; });
      if (!already) {
        report.fail("normalization", "p(0,y1) = " + at_e_y.to_string() +
                                         ", p(x,0) = " + at_x_e.to_string());
      }
    }
  }
  if (!report.passed())
    report.conclusive = false;
  return report;
}

ValidationReport skinny_check(const Cocycle& sigma, const IntegerHom& alpha,
                              const SampleOptions& opts)
{
  ValidationReport report;
  report.subject = "skinniness of " + name_of(sigma) + " w.r.t. " +
                   (alpha.name.empty() ? std::string("alpha") : alpha.name);
  const MalcevGroup& G = *group_of(sigma);
  const std::size_t m = G.hirsch();
  if (!alpha.unit)
    throw Error(ErrorKind::NotSurjective, "no element with alpha = 1 was supplied");
  const GroupElement& unit = *alpha.unit;
  if (alpha(unit) != 1)
    throw Error(ErrorKind::NotSurjective, "alpha(unit) != 1");

  ElementSampler sampler(m, opts.bound, opts.seed ^ 0x5c);
  // Projects g into ker(alpha) by correcting with a power of the unit.
  auto to_kernel = [&](const GroupElement& g) {
    return multiply(G, g, power(G, unit, -alpha(g)));
  };

  report.checks_run.push_back("depends only on (x, alpha(y))");
  if (std::holds_alternative<PolyCocycle>(sigma) && alpha.canonical) {
    report.notes.push_back("polynomial cocycle reads only y1: dependence holds structurally");
  } else {
    Recorder dependence(report, "dependence on alpha(y)");
    for (std::size_t s = 0; s < opts.samples; ++s) {
      GroupElement x = sampler.next(), y = sampler.next();
      GroupElement y2 = multiply(G, y, to_kernel(sampler.next()));
      Integer v1 = evaluate(sigma, x, y), v2 = evaluate(sigma, x, y2);
      if (v1 != v2)
        dependence("alpha(y) = alpha(y') but sigma(x,y) = " + to_string(v1) +
                       ", sigma(x,y') = " + to_string(v2),
                   {x, y, y2});
    }
  }

  report.checks_run.push_back("vanishes on ker(alpha) x ker(alpha)");
  Recorder vanish(report, "vanishing on kernel");
  for (std::size_t s = 0; s < opts.samples; ++s) {
    GroupElement x = to_kernel(sampler.next()), y = to_kernel(sampler.next());
    Integer v = evaluate(sigma, x, y);
    if (v != 0)
      vanish("sigma = " + to_string(v) + " on a kernel pair", {x, y});
  }
  return report;
}

PolyCocycle scale_cocycle(const PolyCocycle& sigma, const Integer& k)
{
  std::string name = sigma.name().empty() ? std::string() : to_string(k) + "*" + sigma.name();
  return PolyCocycle(sigma.group(), sigma.poly() * Rational(k), std::move(name));
}

Cocycle scale_cocycle(const Cocycle& sigma, const Integer& k)
{
  if (const auto* p = std::get_if<PolyCocycle>(&sigma))
    return scale_cocycle(*p, k);
  const auto& ker = std::get<KernelCocycle>(sigma);
  return KernelCocycle(
      ker.group(), [ker, k](const GroupElement& x, const GroupElement& y) { return k * ker(x, y); },
      to_string(k) + "*" + ker.name());
}

PolyCocycle zero_cocycle(GroupRef group)
{
  const std::size_t m = group->hirsch();
  return PolyCocycle(std::move(group), MultiPoly(cocycle_variables(m)), "zero");
}

PolyCocycle builtin_cocycle(const std::string& kind)
{
  if (kind == "z2_skinny") {
    auto G = std::make_shared<const MalcevGroup>(make_lattice(2));
    const auto vars = cocycle_variables(2);
    // x2 * y1
    MultiPoly p = MultiPoly::variable(vars, 1) * MultiPoly::variable(vars, 2);
    return PolyCocycle(G, p, "z2_skinny");
  }
  if (kind == "heisenberg_skinny") {
    auto G = std::make_shared<const MalcevGroup>(make_heisenberg3());
    const auto vars = cocycle_variables(3);
    MultiPoly x2 = MultiPoly::variable(vars, 1), x3 = MultiPoly::variable(vars, 2),
              y1 = MultiPoly::variable(vars, 3);
    // -x3*y1 - x2*y1*(y1+1)/2
    MultiPoly p = -(x3 * y1) - x2 * y1 * (y1 + MultiPoly::constant(vars, 1)) * Rational(1, 2);
    return PolyCocycle(G, p, "heisenberg_skinny");
  }
  throw Error(ErrorKind::ParseError, "unknown builtin cocycle '" + kind + "'");
}

Chain2 voiculescu_cycle()
{
  Chain2 c;
  c.add(1, GroupElement{0, 1}, GroupElement{1, 0});
  c.add(-1, GroupElement{1, 0}, GroupElement{0, 1});
  return c;
}

Chain2 central_cycle(std::size_t hirsch, const Integer& k)
{
  if (hirsch < 2)
    throw Error(ErrorKind::InvalidArgument, "central_cycle needs Hirsch length >= 2");
  GroupElement a = GroupElement::basis(hirsch, 0);
  GroupElement z = GroupElement::identity(hirsch);
  z.coords.back() = k;
  Chain2 c;
  c.add(1, a, z);
  c.add(-1, z, a);
  return c;
}

} // namespace nilstab
