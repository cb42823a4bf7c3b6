#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gha/catalog.hpp"
#include "gha/groupoid.hpp"

using namespace gha;

TEST_CASE("pair groupoid layout and laws") {
  auto g = pair_groupoid(2);
  CHECK(g->size() == 4);
  CHECK(g->units() == 2);
  CHECK(g->validate().ok());
  // ids: 0=(0,0) 1=(1,1) 2=(0,1) 3=(1,0)
  CHECK(g->r(2) == 0);
  CHECK(g->s(2) == 1);
  CHECK(g->inv(2) == 3);
  CHECK(g->compose(2, 3) == 0);
  CHECK(g->compose(3, 2) == 1);
  CHECK(g->compose(2, 2) == -1);
  CHECK(g->r_fiber(0) == std::vector<int>{0, 2});
  CHECK(g->s_fiber(0) == std::vector<int>{0, 3});
  CHECK(g->r_index(2) == 1);
  CHECK(g->max_r_fiber() == 2);
}

TEST_CASE("pair groupoid sizes scale as n^2") {
  for (int n : {1, 2, 3, 4, 5}) {
    auto g = pair_groupoid(n);
    CHECK(g->size() == n * n);
    CHECK(g->units() == n);
    CHECK(g->validate().ok());
    for (int u = 0; u < n; ++u)
      CHECK((int)g->r_fiber(u).size() == n);
  }
}

TEST_CASE("group groupoid is the cayley table") {
  auto g = group_groupoid(sym3_table(), "s3");
  CHECK(g->size() == 6);
  CHECK(g->units() == 1);
  CHECK(g->validate().ok());
  auto t = sym3_table();
  for (int a = 0; a < 6; ++a) {
    CHECK(g->r(a) == 0);
    CHECK(g->s(a) == 0);
    CHECK(g->compose(a, g->inv(a)) == 0);
    for (int b = 0; b < 6; ++b) CHECK(g->compose(a, b) == t[a][b]);
  }
}

TEST_CASE("group bundle keeps fibers apart") {
  auto g = catalog("bundle:z2z3");
  CHECK(g->size() == 5);
  CHECK(g->units() == 2);
  CHECK(g->validate().ok());
  // 2 is the flip over unit 0; 3,4 the rotations over unit 1
  CHECK(g->r(2) == 0);
  CHECK(g->s(2) == 0);
  CHECK(g->r(3) == 1);
  CHECK(g->compose(2, 3) == -1);
  CHECK(g->compose(3, 4) == 1);
  CHECK(g->compose(2, 2) == 0);
  auto orb = g->orbit_of_unit();
  CHECK(orb[0] != orb[1]);
}

TEST_CASE("action groupoid of the swap action") {
  auto g = catalog("action:swap");
  CHECK(g->size() == 8);
  CHECK(g->units() == 4);
  CHECK(g->validate().ok());
  // ids 4..7 are (p, flip) for p = 0..3
  CHECK(g->r(4) == 0);
  CHECK(g->s(4) == 1);
  CHECK(g->s(5) == 0);
  CHECK(g->s(6) == 2);
  CHECK(g->inv(4) == 5);
  CHECK(g->inv(6) == 6);
  CHECK(g->compose(4, 5) == 0);
  auto orb = g->orbit_of_unit();
  CHECK(orb[0] == orb[1]);
  CHECK(orb[2] != orb[0]);
  CHECK(orb[2] != orb[3]);
  CHECK(g->isotropy(0) == std::vector<int>{0});
  CHECK(g->isotropy(2) == std::vector<int>{2, 6});
}

TEST_CASE("reverse swaps range and source") {
  auto g = catalog("pair:3");
  auto gr = reverse(g);
  CHECK(gr->validate().ok());
  for (int x = 0; x < g->size(); ++x) {
    CHECK(gr->r(x) == g->s(x));
    CHECK(gr->s(x) == g->r(x));
    CHECK(gr->inv(x) == g->inv(x));
  }
  for (int x = 0; x < g->size(); ++x)
    for (int y = 0; y < g->size(); ++y)
      if (gr->composable(x, y)) CHECK(gr->compose(x, y) == g->compose(y, x));
  CHECK(reverse(gr)->digest() == g->digest());
}

TEST_CASE("product with the two point pair groupoid") {
  auto g = catalog("cyclic:2");
  ProductI2 p = product_with_i2(g);
  CHECK(p.gpd->size() == 4 * g->size());
  CHECK(p.gpd->units() == 2 * g->units());
  CHECK(p.gpd->validate().ok());
  for (int x = 0; x < g->size(); ++x)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        int w = p.arrow(x, i, j);
        CHECK(p.base(w) == x);
        CHECK(p.left(w) == i);
        CHECK(p.right(w) == j);
        CHECK(p.gpd->r(w) == i * g->units() + g->r(x));
        CHECK(p.gpd->s(w) == j * g->units() + g->s(x));
      }
  // products multiply componentwise
  int a = p.arrow(1, 0, 1);
  int b = p.arrow(1, 1, 0);
  CHECK(p.gpd->compose(a, b) == p.arrow(g->compose(1, 1), 0, 0));
}

TEST_CASE("validate reports broken structures") {
  // tamper with the inverse map of a 2 element group
  std::vector<int> r{0, 0}, s{0, 0}, inv{0, 0};  // wrong: inv(1) should be 1
  std::vector<int> table{0, 1, 1, 0};
  Groupoid g(1, r, s, inv, table, "broken");
  auto rep = g.validate();
  CHECK(!rep.ok());
  CHECK(!rep.str().empty());
}

TEST_CASE("digest separates non isomorphic presentations") {
  CHECK(pair_groupoid(2)->digest() == pair_groupoid(2)->digest());
  CHECK(pair_groupoid(2)->digest() != pair_groupoid(3)->digest());
  CHECK(catalog("cyclic:2")->digest() != catalog("pair:2")->digest());
}

TEST_CASE("catalog covers the advertised names") {
  for (const auto& name : catalog_names()) {
    auto g = catalog(name);
    CHECK(g->validate().ok());
    CHECK(g->name() == name);
  }
  CHECK_THROWS_AS(catalog("no-such"), std::invalid_argument);
}
