#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "gha/bisection.hpp"
#include "gha/catalog.hpp"
#include "gha/linalg.hpp"

using namespace gha;

TEST_CASE("bisection counts") {
  struct Row {
    const char* name;
    size_t count;
  };
  // pair:n carries the permutations of n points; a group carries itself;
  // for action:swap the moved orbit contributes 2 and each fixed point
  // with Z2 isotropy contributes 2 more
  const Row rows[] = {
      {"pair:2", 2},      {"pair:3", 6},       {"pair:4", 24},
      {"cyclic:2", 2},    {"cyclic:3", 3},     {"sym:3", 6},
      {"bundle:z2z3", 6}, {"action:swap", 8},
  };
  for (const auto& row : rows) {
    CAPTURE(row.name);
    EnumerationResult res = enumerate_bisections(catalog(row.name));
    CHECK(res.complete);
    CHECK(res.items.size() == row.count);
    for (const auto& b : res.items) CHECK(is_valid_bisection(catalog(row.name), b));
  }
}

TEST_CASE("bisections form a group") {
  auto g = catalog("pair:3");
  auto all = enumerate_bisections(g).items;
  REQUIRE(all.size() == 6);
  Bisection e = identity_bisection(g);
  CHECK(is_valid_bisection(g, e));

  auto eq = [](const Bisection& a, const Bisection& b) {
    return a.by_r == b.by_r && a.by_s == b.by_s;
  };
  auto member = [&](const Bisection& a) {
    return std::any_of(all.begin(), all.end(),
                       [&](const Bisection& b) { return a.by_r == b.by_r; });
  };

  for (const auto& a : all) {
    CHECK(eq(mul(g, a, e), a));
    CHECK(eq(mul(g, e, a), a));
    CHECK(eq(mul(g, a, inverse(g, a)), e));
    CHECK(eq(mul(g, inverse(g, a), a), e));
    for (const auto& b : all) {
      Bisection ab = mul(g, a, b);
      CHECK(is_valid_bisection(g, ab));
      CHECK(member(ab));
      for (const auto& c : all)
        CHECK(eq(mul(g, mul(g, a, b), c), mul(g, a, mul(g, b, c))));
    }
  }

  // the group is not abelian once there are three points
  bool noncommuting = false;
  for (const auto& a : all)
    for (const auto& b : all)
      if (!eq(mul(g, a, b), mul(g, b, a))) noncommuting = true;
  CHECK(noncommuting);
}

TEST_CASE("translations compose as group actions") {
  auto g = catalog("bundle:z2z3");
  auto all = enumerate_bisections(g).items;
  Rng rng(3);
  GFunction f(g, rng.cgauss_vec(g->size()));
  for (const auto& a : all)
    for (const auto& b : all) {
      Bisection ab = mul(g, a, b);
      GFunction left1 = bisection_act(ab, f, Side::left);
      GFunction left2 = bisection_act(a, bisection_act(b, f, Side::left), Side::left);
      CHECK((left1.v - left2.v).cwiseAbs().maxCoeff() < 1e-15);
      GFunction right1 = bisection_act(ab, f, Side::right);
      GFunction right2 =
          bisection_act(b, bisection_act(a, f, Side::right), Side::right);
      CHECK((right1.v - right2.v).cwiseAbs().maxCoeff() < 1e-15);
    }
  Bisection e = identity_bisection(g);
  CHECK((bisection_act(e, f, Side::left).v - f.v).cwiseAbs().maxCoeff() == 0.0);
  CHECK((bisection_act(e, f, Side::right).v - f.v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("translations slide point masses along the transversal") {
  auto g = catalog("pair:3");
  auto all = enumerate_bisections(g).items;
  for (const auto& a : all)
    for (int x = 0; x < g->size(); ++x) {
      GFunction lf = bisection_act(a, delta(g, x), Side::left);
      for (int y = 0; y < g->size(); ++y) {
        int t = a.by_r[g->s(y)];
        double want = g->compose(y, t) == x ? 1.0 : 0.0;
        CHECK(lf.v(y).real() == want);
      }
    }
}

TEST_CASE("every bisection passes the functional axioms") {
  for (const auto& name : {"pair:3", "cyclic:3", "action:swap"}) {
    auto g = catalog(name);
    CAPTURE(name);
    for (const auto& b : enumerate_bisections(g).items) {
      MultModuleMap m = from_bisection(g, b);
      CheckResult res = check_mult_module_functional(m);
      CAPTURE(res.reason);
      CHECK(res.ok);
    }
  }
}

TEST_CASE("corrupted functionals are refused with a reason") {
  auto g = catalog("pair:3");
  Bisection b = identity_bisection(g);
  MultModuleMap m = from_bisection(g, b);

  MultModuleMap fractional = m;
  fractional.a(0, m.selection[0]) = 0.5;
  CheckResult r1 = check_mult_module_functional(fractional);
  CHECK_FALSE(r1.ok);
  CHECK(!r1.reason.empty());

  // unit 1 selects the arrow (1,0), colliding with unit 0 at source 0
  MultModuleMap folded = m;
  int arrow10 = -1;
  for (int x = 0; x < g->size(); ++x)
    if (g->r(x) == 1 && g->s(x) == 0) arrow10 = x;
  REQUIRE(arrow10 >= 0);
  folded.a.row(1).setZero();
  folded.a(1, arrow10) = 1.0;
  folded.selection[1] = arrow10;
  folded.j[1] = 0;
  CheckResult r2 = check_mult_module_functional(folded);
  CHECK_FALSE(r2.ok);

  // a row with no selection at all
  MultModuleMap empty = m;
  empty.a.row(2).setZero();
  CheckResult r3 = check_mult_module_functional(empty);
  CHECK_FALSE(r3.ok);
}

TEST_CASE("functional enumeration agrees with the bisection picture") {
  for (const auto& name : {"pair:3", "sym:3", "bundle:z2z3", "action:swap"}) {
    auto g = catalog(name);
    CAPTURE(name);
    MapEnumerationResult maps = enumerate_mult_module_maps(g);
    EnumerationResult bis = enumerate_bisections(g);
    CHECK(maps.complete);
    CHECK(maps.items.size() == bis.items.size());

    DualityReport rep = verify_duality(g);
    CHECK(rep.complete);
    CHECK(rep.bijection);
    CHECK(rep.n_bisections == (long long)bis.items.size());
    CHECK(rep.n_maps == rep.n_bisections);
    CHECK(rep.pairing.size() == (size_t)rep.n_bisections);
    std::vector<bool> seen(rep.n_maps, false);
    for (auto [bi, mi] : rep.pairing) {
      CHECK(bi >= 0);
      CHECK(mi >= 0);
      CHECK(!seen[mi]);
      seen[mi] = true;
    }
  }
}

TEST_CASE("arrow coverage by bisections") {
  for (const auto& name : {"pair:3", "cyclic:3", "bundle:z2z3"}) {
    CAPTURE(name);
    DualityReport rep = verify_duality(catalog(name));
    CHECK(rep.every_arrow_covered);
    CHECK(rep.uncovered.empty());
  }
}

TEST_CASE("search caps are reported honestly") {
  auto g = catalog("pair:4");
  EnumerationResult res = enumerate_bisections(g, 5);
  CHECK_FALSE(res.complete);
  DualityReport rep = verify_duality(g, 5);
  CHECK_FALSE(rep.complete);
  CHECK_FALSE(rep.bijection);
}
