#include "nilstab/group.hpp"

#include "nilstab/errors.hpp"

#include <sstream>

namespace nilstab {

GroupElement::GroupElement(std::initializer_list<long> c)
{
  coords.reserve(c.size());
  for (long v : c)
    coords.emplace_back(v);
}

GroupElement GroupElement::identity(std::size_t hirsch)
{
  return GroupElement(std::vector<Integer>(hirsch, Integer(0)));
}

GroupElement GroupElement::basis(std::size_t hirsch, std::size_t i)
{
  GroupElement g = identity(hirsch);
  g.coords.at(i) = 1;
  return g;
}

bool GroupElement::is_identity() const
{
  for (const auto& c : coords)
    if (c != 0)
      return false;
  return true;
}

std::string to_string(const GroupElement& g)
{
  std::string s = "(";
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i)
      s += ",";
    s += to_string(g.coords[i]);
  }
  return s + ")";
}

MalcevGroup::MalcevGroup(std::size_t hirsch, std::vector<MultiPoly> law, std::string name)
    : hirsch_(hirsch), law_(std::move(law)), name_(std::move(name))
{
  if (hirsch_ == 0)
    throw Error(ErrorKind::InvalidArgument, "Hirsch length must be positive");
  if (law_.size() != hirsch_)
    throw Error(ErrorKind::InvalidArgument, "law must have one polynomial per coordinate");
  const auto vars = law_variables(hirsch_);
  for (const auto& p : law_)
    if (p.variables() != vars)
      throw Error(ErrorKind::InvalidArgument,
                  "law polynomials must be over x1..xm, y1..ym");
  corrections_.reserve(hirsch_);
  for (std::size_t i = 0; i < hirsch_; ++i)
    corrections_.push_back(law_[i] - MultiPoly::variable(vars, i) -
                           MultiPoly::variable(vars, hirsch_ + i));
}

namespace {

void check_element(const MalcevGroup& G, const GroupElement& x)
{
  if (x.size() != G.hirsch())
    throw Error(ErrorKind::InvalidArgument, "element " + to_string(x) +
                                                " does not have Hirsch length " +
                                                std::to_string(G.hirsch()));
}

std::vector<Integer> concat(const GroupElement& x, const GroupElement& y)
{
  std::vector<Integer> point;
  point.reserve(x.size() + y.size());
  point.insert(point.end(), x.coords.begin(), x.coords.end());
  point.insert(point.end(), y.coords.begin(), y.coords.end());
  return point;
}

} // namespace

GroupElement multiply(const MalcevGroup& G, const GroupElement& x, const GroupElement& y)
{
  check_element(G, x);
  check_element(G, y);
  const auto point = concat(x, y);
  GroupElement out;
  out.coords.reserve(G.hirsch());
  for (std::size_t i = 0; i < G.hirsch(); ++i)
    out.coords.push_back(to_integer(G.law()[i].evaluate(point),
                                    "coordinate " + std::to_string(i + 1) + " of " +
                                        to_string(x) + "*" + to_string(y)));
  return out;
}

GroupElement inverse(const MalcevGroup& G, const GroupElement& x)
{
  check_element(G, x);
  const std::size_t m = G.hirsch();
  // Solve x*z = e one coordinate at a time: z_i = -x_i - q_i(x, z_<i).
  std::vector<Integer> point = concat(x, GroupElement::identity(m));
  GroupElement z = GroupElement::identity(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational q = G.correction(i).evaluate(point);
    z.coords[i] = -x.coords[i] - to_integer(q, "inverse of " + to_string(x));
    point[m + i] = z.coords[i];
  }
  return z;
}

GroupElement commutator(const MalcevGroup& G, const GroupElement& x, const GroupElement& y)
{
  GroupElement xy = multiply(G, x, y);
  GroupElement t = multiply(G, xy, inverse(G, x));
  return multiply(G, t, inverse(G, y));
}

GroupElement power(const MalcevGroup& G, const GroupElement& x, const Integer& k)
{
  check_element(G, x);
  GroupElement base = k < 0 ? inverse(G, x) : x;
  Integer e = abs(k);
  GroupElement result = GroupElement::identity(G.hirsch());
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t()))
      result = multiply(G, result, base);
    e >>= 1;
    if (e > 0)
      base = multiply(G, base, base);
  }
  return result;
}

Integer canonical_hom(const MalcevGroup& G, const GroupElement& x)
{
  check_element(G, x);
  return x.coords[0];
}

IntegerHom canonical_character(const MalcevGroup& G)
{
  IntegerHom h;
  h.eval = [](const GroupElement& g) { return g.coords.at(0); };
  h.unit = GroupElement::basis(G.hirsch(), 0);
  h.canonical = true;
  h.name = "alpha";
  return h;
}

ElementSampler::ElementSampler(std::size_t hirsch, long bound, std::uint64_t seed)
    : hirsch_(hirsch), bound_(bound), rng_(seed)
{
  if (bound_ < 0)
    throw Error(ErrorKind::InvalidArgument, "sampling bound must be non-negative");
}

long ElementSampler::next_coord()
{
  std::uniform_int_distribution<long> dist(-bound_, bound_);
  return dist(rng_);
}

GroupElement ElementSampler::next()
{
  GroupElement g;
  g.coords.reserve(hirsch_);
  for (std::size_t i = 0; i < hirsch_; ++i)
    g.coords.emplace_back(next_coord());
  return g;
}

void ValidationReport::fail(std::string check, std::string detail,
                            std::vector<GroupElement> witness)
{
  failures.push_back({std::move(check), std::move(detail), std::move(witness)});
}

void ValidationReport::merge(const ValidationReport& other)
{
  checks_run.insert(checks_run.end(), other.checks_run.begin(), other.checks_run.end());
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::string ValidationReport::summary() const
{
  std::ostringstream os;
  os << (subject.empty() ? "validation" : subject) << ": " << (passed() ? "PASS" : "FAIL");
  os << " (" << checks_run.size() << " checks";
  if (!passed())
    os << ", " << failures.size() << " failures";
  os << ")";
  for (const auto& f : failures) {
    os << "\n  [" << f.check << "] " << f.detail;
    if (!f.witness.empty()) {
      os << " witness:";
      for (const auto& w : f.witness)
        os << ' ' << to_string(w);
    }
  }
  for (const auto& n : notes)
    os << "\n  note: " << n;
  return os.str();
}

namespace {

// Cap on recorded failures per check; the count of further ones goes in a note.
constexpr std::size_t kMaxWitnesses = 3;

struct FailureCounter {
  ValidationReport& report;
  std::string check;
  std::size_t count = 0;

  void operator()(std::string detail, std::vector<GroupElement> witness = {})
  {
    if (count++ < kMaxWitnesses)
      report.fail(check, std::move(detail), std::move(witness));
  }

  ~FailureCounter()
  {
    if (count > kMaxWitnesses)
      report.notes.push_back(check + ": " + std::to_string(count - kMaxWitnesses) +
                             " further failures not listed");
  }
};

// Finds a concrete element on which the identity law fails, starting with e.
std::optional<GroupElement> identity_witness(const MalcevGroup& G, bool right,
                                             const SampleOptions& opts)
{
  const auto e = GroupElement::identity(G.hirsch());
  ElementSampler sampler(G.hirsch(), opts.bound, opts.seed ^ 0x1d);
  for (std::size_t k = 0; k < 1 + opts.samples; ++k) {
    GroupElement x = k == 0 ? e : sampler.next();
    try {
      GroupElement prod = right ? multiply(G, x, e) : multiply(G, e, x);
      if (prod != x)
        return x;
    } catch (const Error&) {
      return x;
    }
  }
  return std::nullopt;
}

} // namespace

ValidationReport validate_group(const MalcevGroup& G, const SampleOptions& opts)
{
  ValidationReport report;
  report.subject = "group " + (G.name().empty() ? std::string("<unnamed>") : G.name());
  const std::size_t m = G.hirsch();
  const auto vars = law_variables(m);

  // Identity laws, symbolically: law_i(x, 0) = x_i and law_i(0, y) = y_i.
  std::vector<MultiPoly> kill_y, kill_x;
  for (std::size_t j = 0; j < 2 * m; ++j) {
    MultiPoly var = MultiPoly::variable(vars, j);
    MultiPoly zero(vars);
    kill_y.push_back(j < m ? var : zero);
    kill_x.push_back(j < m ? zero : var);
  }
  report.checks_run.push_back("identity (symbolic)");
  for (int side = 0; side < 2; ++side) {
    bool right = side == 0;
    for (std::size_t i = 0; i < m; ++i) {
      MultiPoly restricted = G.law()[i].compose(right ? kill_y : kill_x);
      MultiPoly expected = MultiPoly::variable(vars, right ? i : m + i);
      if (restricted == expected)
        continue;
      std::ostringstream detail;
      detail << (right ? "law_" : "law_") << (i + 1) << (right ? "(x,0) = " : "(0,y) = ")
             << restricted.to_string() << ", expected " << expected.to_string();
      std::vector<GroupElement> witness;
      if (auto w = identity_witness(G, right, opts))
        witness.push_back(*w);
      report.fail(right ? "right identity" : "left identity", detail.str(), witness);
    }
  }

  // Triangularity: law_i - x_i - y_i may only involve coordinates before i.
  report.checks_run.push_back("triangularity (symbolic)");
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [e, c] : G.correction(i).terms()) {
      bool bad = false;
      for (std::size_t j = i; j < m; ++j)
        bad = bad || e[j] > 0 || e[m + j] > 0;
      if (!bad)
        continue;
      MultiPoly mono(vars);
      mono.add_term(e, c);
      report.fail("triangularity", "law_" + std::to_string(i + 1) + " contains " +
                                       mono.to_string() + " involving a coordinate >= " +
                                       std::to_string(i + 1));
    }
  }

  // Sampled associativity, inverses and integrality.
  report.checks_run.push_back("associativity (sampled)");
  report.checks_run.push_back("inverse (sampled)");
  report.checks_run.push_back("integrality (sampled)");
  ElementSampler sampler(m, opts.bound, opts.seed);
  const auto e = GroupElement::identity(m);
  FailureCounter assoc{report, "associativity"};
  FailureCounter inv{report, "inverse"};
  FailureCounter integral{report, "integrality"};
  for (std::size_t s = 0; s < opts.samples; ++s) {
    GroupElement x = sampler.next(), y = sampler.next(), z = sampler.next();
    try {
      GroupElement left = multiply(G, multiply(G, x, y), z);
      GroupElement right = multiply(G, x, multiply(G, y, z));
      if (left != right)
        assoc("(xy)z = " + to_string(left) + " but x(yz) = " + to_string(right), {x, y, z});
      GroupElement xi = inverse(G, x);
      if (multiply(G, x, xi) != e || multiply(G, xi, x) != e)
        inv("x^{-1} = " + to_string(xi) + " is not a two-sided inverse", {x});
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NonIntegralValue)
        throw;
      integral(err.what(), {x, y, z});
    }
  }
  return report;
}

void require_valid(const MalcevGroup& G, const SampleOptions& opts)
{
  ValidationReport r = validate_group(G, opts);
  if (!r.passed())
    throw Error(ErrorKind::ValidationError, r.summary());
}

MalcevGroup quotient_by_last(const MalcevGroup& G)
{
  const std::size_t m = G.hirsch();
  if (m < 2)
    throw Error(ErrorKind::InvalidArgument, "quotient_by_last needs Hirsch length >= 2");
  const auto last = GroupElement::basis(m, m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto a = GroupElement::basis(m, i);
    for (const auto& g : {a, inverse(G, a)}) {
      GroupElement c = commutator(G, last, g);
      if (!c.is_identity())
        throw Error(ErrorKind::NotCentral, "[a_" + std::to_string(m) + ", " + to_string(g) +
                                               "] = " + to_string(c));
    }
  }
  const auto target = law_variables(m - 1);
  std::vector<MultiPoly> images;
  for (std::size_t j = 0; j < 2 * m; ++j) {
    std::size_t coord = j % m;
    if (coord == m - 1) {
      images.emplace_back(target);
    } else {
      std::size_t idx = j < m ? coord : (m - 1) + coord;
      images.push_back(MultiPoly::variable(target, idx));
    }
  }
  std::vector<MultiPoly> law;
  for (std::size_t i = 0; i + 1 < m; ++i)
    law.push_back(G.law()[i].compose(images));
  std::string name = G.name().empty() ? std::string() : G.name() + "/<a" + std::to_string(m) + ">";
  return MalcevGroup(m - 1, std::move(law), std::move(name));
}

MalcevGroup make_lattice(std::size_t m)
{
  const auto vars = law_variables(m);
  std::vector<MultiPoly> law;
  for (std::size_t i = 0; i < m; ++i)
    law.push_back(MultiPoly::variable(vars, i) + MultiPoly::variable(vars, m + i));
  return MalcevGroup(m, std::move(law), "Z" + std::to_string(m));
}

MalcevGroup make_heisenberg3()
{
  const auto vars = law_variables(3);
  auto v = [&](std::size_t i) { return MultiPoly::variable(vars, i); };
  // x1..x3 are 0..2, y1..y3 are 3..5.
  std::vector<MultiPoly> law{v(0) + v(3), v(1) + v(4), v(2) + v(5) + v(1) * v(3)};
  return MalcevGroup(3, std::move(law), "heisenberg3");
}

MalcevGroup make_builtin(const std::string& name)
{
  std::optional<MalcevGroup> G;
  auto lattice_dim = [](const std::string& digits) -> std::size_t {
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::ParseError, "bad lattice dimension '" + digits + "'");
    std::size_t m = std::stoul(digits);
    if (m == 0 || m > 64)
      throw Error(ErrorKind::ParseError, "lattice dimension must be in 1..64");
    return m;
  };
  if (name == "heisenberg3" || name == "H3")
    G.emplace(make_heisenberg3());
  else if (name.rfind("lattice:", 0) == 0)
    G.emplace(make_lattice(lattice_dim(name.substr(8))));
  else if (name.size() > 1 && name[0] == 'Z')
    G.emplace(make_lattice(lattice_dim(name.substr(1))));
  else
    throw Error(ErrorKind::ParseError, "unknown builtin group '" + name + "'");
  require_valid(*G);
  return *G;
}

} // namespace nilstab
