#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "gha/catalog.hpp"
#include "gha/json_io.hpp"

using namespace gha;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  const char* bin = std::getenv("GHA_CLI");
  if (!bin) throw std::runtime_error("GHA_CLI not set");
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  int code = (st >= 0 && WIFEXITED(st)) ? WEXITSTATUS(st) : -1;
  return {code, out};
}

fs::path scratch_file(const std::string& name) {
  return fs::temp_directory_path() / ("gha_cli_test_" + name);
}

}  // namespace

TEST_CASE("vn-dims emits the dimension table") {
  RunResult r = run("vn-dims --groupoid pair:3");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("b_e2") == 81);
  CHECK(j.at("module") == 27);
  CHECK(j.at("vn") == 9);
  CHECK(j.at("cred") == 9);
  CHECK(j.at("intersection") == 1);
}

TEST_CASE("validate accepts catalog names and serialized groupoids") {
  CHECK(run("validate --groupoid sym:3").code == 0);

  fs::path good = scratch_file("good_groupoid.json");
  write_json_file(good.string(), groupoid_to_json(*catalog("cyclic:3")));
  CHECK(run("validate --groupoid " + good.string()).code == 0);
  fs::remove(good);

  fs::path bad = scratch_file("bad_groupoid.json");
  {
    std::ofstream os(bad);
    os << "{\"schema\": \"1\", \"name\": \"broken\"}";
  }
  CHECK(run("validate --groupoid " + bad.string()).code == 3);
  fs::remove(bad);
}

TEST_CASE("norms reports bracketed values for the unit indicator") {
  fs::path f = scratch_file("chi.json");
  write_json_file(f.string(),
                  gfunction_to_json(unit_indicator(catalog("cyclic:3"))));
  RunResult r = run("norms " + f.string() + " --groupoid cyclic:3 --tol 1e-4");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("bg").at("lower").get<double>() <= 1.0 + 1e-9);
  CHECK(j.at("bg").at("upper").get<double>() >= 1.0 - 1e-9);
  CHECK(std::abs(j.at("bg").at("upper").get<double>() - 1.0) < 1e-2);
  CHECK(j.at("a1").at("upper").get<double>() <
        j.at("bg").at("upper").get<double>() + 1e-6);
  fs::remove(f);
}

TEST_CASE("pd-check tells point masses from the unit indicator") {
  fs::path f = scratch_file("pdprobe.json");
  auto g = catalog("pair:3");
  write_json_file(f.string(), gfunction_to_json(unit_indicator(g)));
  RunResult r = run("pd-check " + f.string() + " --groupoid pair:3");
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out).at("positive_definite") == true);

  write_json_file(f.string(), gfunction_to_json(delta(g, g->units())));
  RunResult r2 = run("pd-check " + f.string() + " --groupoid pair:3");
  CHECK(r2.code == 1);
  CHECK(Json::parse(r2.out).at("positive_definite") == false);
  fs::remove(f);
}

TEST_CASE("gns-roundtrip on a generated function stays tiny") {
  RunResult r = run("gns-roundtrip --groupoid action:swap --seed 5");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("gns_roundtrip_error").get<double>() < 1e-8);
  CHECK(j.at("regular_roundtrip_error").get<double>() < 1e-8);
  CHECK(j.at("ok") == true);
}

TEST_CASE("duality counts and pairing on a pair groupoid") {
  RunResult r = run("duality --groupoid pair:2");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("bisections") == 2);
  CHECK(j.at("mult_module_maps") == 2);
  CHECK(j.at("is_bijection") == true);
  CHECK(j.at("bijection").size() == 2);
  CHECK(j.at("hypothesis_every_arrow_covered") == true);
}

TEST_CASE("identical invocations produce identical bytes") {
  fs::path f = scratch_file("det.json");
  auto g = catalog("pair:2");
  GFunction phi(g, Vec::Zero(4));
  phi.v << Complex(0.3, 0.1), Complex(-0.2, 0.0), Complex(0.7, -0.4),
      Complex(0.1, 0.9);
  write_json_file(f.string(), gfunction_to_json(phi));
  std::string args = "norms " + f.string() + " --groupoid pair:2 --tol 1e-4 --seed 3";
  RunResult a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  fs::remove(f);
}

TEST_CASE("--out writes the same report to a file") {
  fs::path dst = scratch_file("report.json");
  RunResult direct = run("vn-dims --groupoid cyclic:2");
  RunResult r = run("vn-dims --groupoid cyclic:2 --out " + dst.string());
  REQUIRE(direct.code == 0);
  REQUIRE(r.code == 0);
  Json from_file = load_json_file(dst.string());
  CHECK(from_file == Json::parse(direct.out));
  fs::remove(dst);
}

TEST_CASE("exit codes distinguish parse and validation failures") {
  CHECK(run("no-such-command").code == 2);
  CHECK(run("vn-dims --groupoid nope:7").code == 3);
  CHECK(run("norms /nonexistent.json --groupoid pair:2").code == 4);
  CHECK(run("--help").code == 0);
}
