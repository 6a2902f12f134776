#include "nilstab/io.hpp"

#include "nilstab/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace nilstab {

using nlohmann::json;

namespace {

[[noreturn]] void structure_error(const std::string& where, const std::string& what)
{
  throw Error(ErrorKind::ParseError, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

json parse_document(std::string_view text)
{
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1, col = 1;
    std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " +
                                           std::to_string(col) + " (byte " + std::to_string(e.byte) +
                                           "): " + e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& where)
{
  if (!obj.is_object())
    structure_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    structure_error(where, std::string("missing \"") + key + "\"");
  return *it;
}

Integer read_integer(const json& v, const std::string& where)
{
  if (v.is_number_integer())
    return v.is_number_unsigned() ? Integer(std::to_string(v.get<std::uint64_t>()))
                                  : Integer(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    try {
      return parse_integer(v.get_ref<const std::string&>());
    } catch (const Error& e) {
      structure_error(where, e.what());
    }
  }
  if (v.is_number_float())
    structure_error(where, "non-integral or out-of-range number; write large integers as strings");
  structure_error(where, "expected an integer");
}

std::size_t read_size(const json& v, const std::string& where)
{
  Integer z = read_integer(v, where);
  if (z < 0 || !z.fits_ulong_p())
    structure_error(where, "expected a non-negative size");
  return z.get_ui();
}

std::vector<std::uint32_t> read_exponents(const json& v, std::size_t expected, const std::string& where)
{
  if (!v.is_array())
    structure_error(where, "expected an array of exponents");
  if (v.size() != expected)
    structure_error(where, "expected " + std::to_string(expected) + " exponents, got " +
                               std::to_string(v.size()));
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string w = where + "/" + std::to_string(i);
    Integer z = read_integer(v[i], w);
    if (z < 0 || z > 64)
      structure_error(w, "exponent must lie in [0, 64]");
    out.push_back(static_cast<std::uint32_t>(z.get_ui()));
  }
  return out;
}

Rational read_coef(const json& v, const std::string& where)
{
  if (!v.is_array() || v.size() != 2)
    structure_error(where, "expected [numerator, denominator]");
  Integer num = read_integer(v[0], where + "/0");
  Integer den = read_integer(v[1], where + "/1");
  if (den == 0)
    structure_error(where + "/1", "zero denominator");
  return make_rational(num, den);
}

MultiPoly read_poly(const json& v, std::vector<std::string> vars, std::size_t nx, std::size_t ny,
                    const std::string& where)
{
  if (!v.is_array())
    structure_error(where, "expected a list of monomials");
  MultiPoly p(std::move(vars));
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::string w = where + "/" + std::to_string(k);
    Rational c = read_coef(field(v[k], "coef", w), w + "/coef");
    auto ex = read_exponents(field(v[k], "x_exps", w), nx, w + "/x_exps");
    auto ey = read_exponents(field(v[k], "y_exps", w), ny, w + "/y_exps");
    ex.insert(ex.end(), ey.begin(), ey.end());
    p.add_term(ex, c);
  }
  return p;
}

json write_poly(const MultiPoly& p, std::size_t nx)
{
  json out = json::array();
  for (const auto& [e, c] : p.terms()) {
    json mono;
    mono["coef"] = json::array({to_string(Integer(c.get_num())), to_string(Integer(c.get_den()))});
    mono["x_exps"] = std::vector<std::uint32_t>(e.begin(), e.begin() + static_cast<long>(nx));
    mono["y_exps"] = std::vector<std::uint32_t>(e.begin() + static_cast<long>(nx), e.end());
    out.push_back(std::move(mono));
  }
  return out;
}

json write_element(const GroupElement& g)
{
  json out = json::array();
  for (const auto& c : g.coords)
    out.push_back(to_string(c));
  return out;
}

GroupElement read_element(const json& v, std::size_t hirsch, const std::string& where)
{
  if (!v.is_array())
    structure_error(where, "expected an array of coordinates");
  if (v.size() != hirsch)
    structure_error(where, "expected " + std::to_string(hirsch) + " coordinates, got " +
                               std::to_string(v.size()));
  GroupElement g;
  for (std::size_t i = 0; i < v.size(); ++i)
    g.coords.push_back(read_integer(v[i], where + "/" + std::to_string(i)));
  return g;
}

json write_pairing(const PairingResult& r)
{
  json out;
  out["raw"] = r.raw;
  out["rounded"] = r.rounded ? json(to_string(*r.rounded)) : json(nullptr);
  out["residual"] = r.residual;
  out["is_cycle"] = r.is_cycle;
  out["term_distances"] = r.term_distances;
  out["per_term_log_norms"] = r.per_term_log_norms;
  json tr = json::array();
  for (const auto& t : r.traces)
    tr.push_back(json::array({t.real(), t.imag()}));
  out["traces"] = tr;
  out["max_roundtrip_error"] = r.max_roundtrip_error;
  return out;
}

std::string join(const GroupElement& g)
{
  std::string s;
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i)
      s += ';';
    s += to_string(g.coords[i]);
  }
  return s;
}

std::string fmt(double v)
{
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

} // namespace

MalcevGroup parse_group_json(std::string_view text)
{
  json doc = parse_document(text);
  std::string name;
  if (doc.is_object() && doc.contains("name")) {
    if (!doc["name"].is_string())
      structure_error("/name", "expected a string");
    name = doc["name"].get<std::string>();
  }
  std::size_t m = read_size(field(doc, "hirsch", ""), "/hirsch");
  if (m == 0)
    structure_error("/hirsch", "Hirsch length must be positive");
  const json& law = field(doc, "law", "");
  if (!law.is_array() || law.size() != m)
    structure_error("/law", "expected " + std::to_string(m) + " polynomials");
  std::vector<MultiPoly> polys;
  for (std::size_t i = 0; i < m; ++i)
    polys.push_back(read_poly(law[i], law_variables(m), m, m, "/law/" + std::to_string(i)));
  try {
    return MalcevGroup(m, std::move(polys), name);
  } catch (const Error& e) {
    structure_error("/law", e.what());
  }
}

std::string group_to_json(const MalcevGroup& G)
{
  json doc;
  doc["name"] = G.name();
  doc["hirsch"] = G.hirsch();
  json law = json::array();
  for (const auto& p : G.law())
    law.push_back(write_poly(p, G.hirsch()));
  doc["law"] = law;
  return doc.dump(2);
}

PolyCocycle parse_cocycle_json(std::string_view text, GroupRef group)
{
  json doc = parse_document(text);
  const std::size_t m = group->hirsch();
  std::string name;
  if (doc.is_object() && doc.contains("name")) {
    if (!doc["name"].is_string())
      structure_error("/name", "expected a string");
    name = doc["name"].get<std::string>();
  }
  if (doc.is_object() && doc.contains("hirsch") && read_size(doc["hirsch"], "/hirsch") != m)
    structure_error("/hirsch", "cocycle is for Hirsch length " + doc["hirsch"].dump() +
                                   " but the group has " + std::to_string(m));
  MultiPoly p = read_poly(field(doc, "poly", ""), cocycle_variables(m), m, 1, "/poly");
  return PolyCocycle(std::move(group), std::move(p), name);
}

std::string cocycle_to_json(const PolyCocycle& sigma)
{
  json doc;
  doc["name"] = sigma.name();
  doc["hirsch"] = sigma.group()->hirsch();
  doc["poly"] = write_poly(sigma.poly(), sigma.group()->hirsch());
  return doc.dump(2);
}

Chain2 parse_chain_json(std::string_view text, std::size_t hirsch)
{
  json doc = parse_document(text);
  if (!doc.is_array())
    structure_error("", "expected a list of chain terms");
  Chain2 c;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    std::string w = "/" + std::to_string(k);
    Integer coef = read_integer(field(doc[k], "coef", w), w + "/coef");
    GroupElement a = read_element(field(doc[k], "a", w), hirsch, w + "/a");
    GroupElement b = read_element(field(doc[k], "b", w), hirsch, w + "/b");
    c.add(coef, std::move(a), std::move(b));
  }
  return c;
}

std::string chain_to_json(const Chain2& c)
{
  json doc = json::array();
  for (const auto& t : c.terms)
    doc.push_back({{"coef", to_string(t.coef)}, {"a", write_element(t.a)}, {"b", write_element(t.b)}});
  return doc.dump(2);
}

std::string read_text_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string certificate_to_json(const CertificateReport& report, const PolyCocycle& sigma,
                                const Chain2& c, const CertificateInputs& inputs)
{
  json doc;
  doc["inputs"] = {
      {"group", inputs.group_source},
      {"group_name", report.group},
      {"cocycle", inputs.cocycle_source},
      {"cocycle_poly", sigma.poly().to_string()},
      {"cycle", inputs.cycle_source},
      {"cycle_terms", json::parse(chain_to_json(c))},
      {"n_list", inputs.n_list},
      {"seed", inputs.seed},
  };
  doc["sigma_pairing"] = to_string(report.sigma_pairing);
  doc["expected_pairing"] = to_string(report.expected);
  doc["tolerances"] = {
      {"residual", report.residual_tolerance},
      {"scalar_log", report.scalar_log_tolerance},
      {"operator_norm_margin", report.margin},
      {"log_series_term", LogOptions{}.tol},
      {"power_iteration", PowerIterationOptions{}.tol},
  };
  doc["distance_bound"] = report.distance_bound;
  json entries = json::array();
  for (const auto& e : report.entries) {
    json je;
    je["n"] = e.n;
    je["status"] = e.status;
    je["pairing"] = e.pairing ? write_pairing(*e.pairing) : json(nullptr);
    je["alternate_ordering"] = e.alternate ? write_pairing(*e.alternate) : json(nullptr);
    je["scalar_log_error"] = e.scalar_log_error;
    if (!e.note.empty())
      je["note"] = e.note;
    entries.push_back(std::move(je));
  }
  doc["entries"] = entries;
  doc["orderings"] = {
      {"summand", "rho(ab) rho(b)^-1 rho(a)^-1"},
      {"alternate", "rho(ab) rho(a)^-1 rho(b)^-1"},
  };
  doc["certified"] = report.ok();
  doc["statement"] = report.statement;
  return doc.dump(2);
}

std::string validation_to_json(const std::vector<ValidationReport>& reports, std::uint64_t seed)
{
  json doc;
  doc["seed"] = seed;
  json arr = json::array();
  bool all = true;
  for (const auto& r : reports) {
    json jr;
    jr["subject"] = r.subject;
    jr["passed"] = r.passed();
    jr["conclusive"] = r.conclusive;
    jr["checks_run"] = r.checks_run;
    jr["notes"] = r.notes;
    json fails = json::array();
    for (const auto& f : r.failures) {
      json w = json::array();
      for (const auto& g : f.witness)
        w.push_back(write_element(g));
      fails.push_back({{"check", f.check}, {"detail", f.detail}, {"witness", w}});
    }
    jr["failures"] = fails;
    all = all && r.passed();
    arr.push_back(std::move(jr));
  }
  doc["reports"] = arr;
  doc["passed"] = all;
  return doc.dump(2);
}

std::string defect_csv_header()
{
  return "n,x,y,sigma_xy,frob_defect,frob_bound,op_defect,op_bound";
}

std::string defect_csv_row(const DefectRow& row)
{
  std::string s = std::to_string(row.n) + "," + join(row.x) + "," + join(row.y) + ",";
  if (!row.defect)
    return s + row.status + ",,,,";
  const Defect& d = *row.defect;
  return s + to_string(d.sigma) + "," + fmt(d.frob) + "," + fmt(d.bound_frob) + "," + fmt(d.op) +
         "," + fmt(d.bound_op);
}

} // namespace nilstab
