#include "nilstab/errors.hpp"
#include "nilstab/io.hpp"

#include <doctest.h>

#include <algorithm>

using namespace nilstab;

namespace {

ErrorKind kind_of(auto&& fn)
{
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

} // namespace

TEST_CASE("group documents round-trip")
{
  const MalcevGroup H = make_heisenberg3();
  MalcevGroup back = parse_group_json(group_to_json(H));
  CHECK(back == H);
  CHECK(back.name() == H.name());
}

TEST_CASE("cocycle documents round-trip, including denominators")
{
  PolyCocycle s = builtin_cocycle("heisenberg_skinny");
  const std::string text = cocycle_to_json(s);
  CHECK(text.find("\"2\"") != std::string::npos);
  PolyCocycle back = parse_cocycle_json(text, s.group());
  CHECK(back.poly() == s.poly());
  CHECK(back.name() == "heisenberg_skinny");
}

TEST_CASE("chains round-trip")
{
  Chain2 c = central_cycle(3, Integer(-2));
  Chain2 back = parse_chain_json(chain_to_json(c), 3);
  REQUIRE(back.terms.size() == c.terms.size());
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    CHECK(back.terms[i].coef == c.terms[i].coef);
    CHECK(back.terms[i].a == c.terms[i].a);
    CHECK(back.terms[i].b == c.terms[i].b);
  }
}

TEST_CASE("integers beyond 64 bits travel as strings")
{
  const std::string big = "123456789012345678901234567890";
  Chain2 c = parse_chain_json("[{\"coef\": \"" + big + "\", \"a\": [\"-" + big + "\"], \"b\": [1]}]", 1);
  CHECK(c.terms[0].coef == Integer(big));
  CHECK(c.terms[0].a.coords[0] == -Integer(big));
  CHECK(chain_to_json(c).find(big) != std::string::npos);

  CHECK(kind_of([] { parse_chain_json("[{\"coef\": 1e40, \"a\": [0], \"b\": [0]}]", 1); }) ==
        ErrorKind::ParseError);
}

TEST_CASE("syntax errors carry line and column")
{
  try {
    parse_group_json("{\n  \"hirsch\": 1,\n  \"law\": [ ,\n}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("structural errors carry a JSON pointer")
{
  try {
    parse_group_json(R"({"hirsch": 1, "law": [[{"coef": [1, 0], "x_exps": [1], "y_exps": [0]}]]})");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/law/0/0/coef/1") != std::string::npos);
  }
  CHECK(kind_of([] { parse_group_json(R"({"hirsch": 2, "law": []})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_group_json(R"({"law": []})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] {
          parse_group_json(R"({"hirsch": 1, "law": [[{"coef": [1, 1], "x_exps": [1, 0], "y_exps": [0]}]]})");
        }) == ErrorKind::ParseError);
  auto G = std::make_shared<const MalcevGroup>(make_lattice(2));
  CHECK(kind_of([&] { parse_cocycle_json(R"({"hirsch": 3, "poly": []})", G); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_chain_json(R"([{"coef": 1, "a": [1, 2], "b": [0]}])", 2); }) ==
        ErrorKind::ParseError);
}

TEST_CASE("defect CSV rows")
{
  CHECK(defect_csv_header() == "n,x,y,sigma_xy,frob_defect,frob_bound,op_defect,op_bound");
  DefectRow skipped{16, GroupElement{1, -2, 3}, GroupElement{0, 0, 4}, std::nullopt, "skipped:not_coprime"};
  CHECK(defect_csv_row(skipped) == "16,1;-2;3,0;0;4,skipped:not_coprime,,,,");

  PolyCocycle s = builtin_cocycle("z2_skinny");
  DefectRow row{16, GroupElement{0, 1}, GroupElement{1, 0}, defect(s, 16, GroupElement{0, 1}, GroupElement{1, 0}), "ok"};
  const std::string line = defect_csv_row(row);
  CHECK(line.rfind("16,0;1,1;0,1,1.56", 0) == 0);
  CHECK(std::count(line.begin(), line.end(), ',') == 7);
}

TEST_CASE("certificate JSON records both orderings and the statement")
{
  PolyCocycle s = builtin_cocycle("z2_skinny");
  CertificateReport r = certify_nonperturbability(s, voiculescu_cycle(), {16});
  const std::string j = certificate_to_json(r, s, voiculescu_cycle(), {"lattice:2", "builtin:z2_skinny", "builtin:voiculescu", {16}, 42});
  for (const char* key : {"\"alternate_ordering\"", "\"statement\"", "\"seed\": 42", "\"expected_pairing\": \"-1\"",
                          "\"certified\": true", "\"tolerances\""})
    CHECK_MESSAGE(j.find(key) != std::string::npos, key);
}
