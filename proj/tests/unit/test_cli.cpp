#include "nilstab/cli.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace nilstab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args)
{
  args.insert(args.begin(), "nilstab");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(NILSTAB_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path)
{
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("validate")
{
  CHECK(run({"validate", "--group", "heisenberg3", "--cocycle", "builtin:heisenberg_skinny"}).code == 0);
  CHECK(run({"validate", "--group", data("heisenberg.json"), "--cocycle", "builtin:heisenberg_skinny"}).code == 0);

  Run bad = run({"validate", "--group", data("malformed.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line") != std::string::npos);

  Run nc = run({"validate", "--group", "lattice:1", "--cocycle", data("not_a_cocycle.json")});
  CHECK(nc.code == 1);
  CHECK(nc.out.find("witness") != std::string::npos);

  Run js = run({"validate", "--group", "lattice:2", "--format", "json"});
  CHECK(js.code == 0);
  CHECK(js.out.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("certify")
{
  Run z = run({"certify", "--group", "lattice:2", "--cocycle", "builtin:z2_skinny", "--cycle", "builtin:voiculescu",
               "--n", "16,32,64"});
  CHECK(z.code == 0);
  CHECK(z.err.find("n=16 certified pairing=-1") != std::string::npos);
  CHECK(z.err.find("n=32 certified pairing=-1") != std::string::npos);
  CHECK(z.err.find("n=64 certified pairing=-1") != std::string::npos);
  CHECK(z.out.find("\"certified\": true") != std::string::npos);

  Run h = run({"certify", "--group", "heisenberg3", "--cocycle", "builtin:heisenberg_skinny", "--cycle", "builtin:c1"});
  CHECK(h.code == 0);

  Run f = run({"certify", "--group", "heisenberg3", "--cocycle", "builtin:heisenberg_skinny", "--cycle",
               data("skinny_c1.json"), "--n", "31"});
  CHECK(f.code == 0);

  Run zero = run({"certify", "--group", "lattice:2", "--cocycle", "zero", "--cycle", "builtin:voiculescu"});
  CHECK(zero.code == 1);
  CHECK(zero.err.find("TorsionPairing") != std::string::npos);

  // only even n for a cocycle with denominator 2: nothing gets certified
  Run even = run({"certify", "--group", "heisenberg3", "--cocycle", "builtin:heisenberg_skinny", "--cycle",
                  "builtin:c1", "--n", "16,32"});
  CHECK(even.code == 1);
}

TEST_CASE("certificate output is byte-identical across runs")
{
  std::vector<std::string> args{"certify", "--group", "heisenberg3", "--cocycle", "builtin:heisenberg_skinny",
                                "--cycle", "builtin:ck:2", "--n", "15,31", "--out", "cert_a.json"};
  CHECK(run(args).code == 0);
  args.back() = "cert_b.json";
  CHECK(run(args).code == 0);
  CHECK(slurp("cert_a.json") == slurp("cert_b.json"));
  CHECK(slurp("cert_a.json").find("\"seed\"") != std::string::npos);
}

TEST_CASE("sweep")
{
  Run a = run({"sweep", "--group", "lattice:2", "--cocycle", "builtin:z2_skinny", "--samples", "10", "--n", "8,16"});
  CHECK(a.code == 0);
  Run b = run({"sweep", "--group", "lattice:2", "--cocycle", "builtin:z2_skinny", "--samples", "10", "--n", "8,16"});
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string first, header;
  std::getline(lines, first);
  std::getline(lines, header);
  CHECK(first.rfind("# seed=", 0) == 0);
  CHECK(header == "n,x,y,sigma_xy,frob_defect,frob_bound,op_defect,op_bound");
  std::size_t rows = 0;
  for (std::string l; std::getline(lines, l);)
    ++rows;
  CHECK(rows == 20);

  Run h = run({"sweep", "--group", "heisenberg3", "--cocycle", "builtin:heisenberg_skinny", "--samples", "3", "--n",
               "16"});
  CHECK(h.code == 0);
  CHECK(h.out.find("skipped:not_coprime") != std::string::npos);

  Run other_seed = run({"sweep", "--cocycle", "builtin:z2_skinny", "--samples", "10", "--n", "8", "--seed", "7"});
  CHECK(other_seed.out != a.out);
}

TEST_CASE("usage errors exit with 2")
{
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"certify", "--group", "lattice:2", "--cocycle", "builtin:z2_skinny"}).code == 2);
  CHECK(run({"sweep", "--cocycle", "builtin:z2_skinny", "--seed", "notanumber"}).code == 2);
  CHECK(run({"validate", "--group", "lattice:2", "--cocycle", "builtin:heisenberg_skinny"}).code == 2);
  CHECK(run({"validate", "--group", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"certify", "--group", "lattice:2", "--cocycle", "builtin:z2_skinny", "--cycle", "builtin:what"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
