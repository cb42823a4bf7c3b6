#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>

#include "doctest.h"
#include "gha/catalog.hpp"
#include "gha/vn.hpp"

using namespace gha;
using C = std::complex<double>;

namespace {
ModuleOperator random_commutant_element(const GroupoidPtr& g, Rng& rng) {
  auto basis = commutant_of_right(g);
  ModuleOperator t{g, Mat::Zero(g->size(), g->size())};
  for (const auto& b : basis) t.m += rng.cgauss() * b.m;
  return t;
}
}  // namespace

TEST_CASE("dimension table") {
  struct Row {
    const char* name;
    VnDims want;
  };
  // vn and cred are the left and right translation algebras per orbit,
  // the intersection picks out their common center
  const Row rows[] = {
      {"pair:2", {16, 8, 4, 4, 1}},
      {"pair:3", {81, 27, 9, 9, 1}},
      {"cyclic:3", {9, 9, 3, 3, 3}},
      {"sym:3", {36, 36, 6, 6, 3}},
      {"bundle:z2z3", {25, 13, 5, 5, 5}},
      {"action:swap", {64, 16, 8, 8, 5}},
  };
  for (const auto& row : rows) {
    CAPTURE(row.name);
    VnDims d = vn_dims(catalog(row.name));
    CHECK(d.b_e2 == row.want.b_e2);
    CHECK(d.module == row.want.module);
    CHECK(d.vn == row.want.vn);
    CHECK(d.cred == row.want.cred);
    CHECK(d.intersection == row.want.intersection);
  }
}

TEST_CASE("right convolutions are fiber diagonal, left ones are not") {
  auto g = catalog("pair:2");
  Rng rng(3);
  GFunction f(g, rng.cgauss_vec(g->size()));
  CHECK(is_fiber_diagonal(right_operator(f)));
  CHECK_FALSE(is_fiber_diagonal(left_operator(f)));
}

TEST_CASE("left and right convolutions commute") {
  auto g = catalog("sym:3");
  Rng rng(5);
  GFunction f(g, rng.cgauss_vec(g->size()));
  GFunction h(g, rng.cgauss_vec(g->size()));
  Mat lf = left_operator(f).m, rh = right_operator(h).m;
  CHECK((lf * rh - rh * lf).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("commutant basis commutes with every right translation") {
  for (const auto& name : {"pair:3", "bundle:z2z3"}) {
    auto g = catalog(name);
    auto basis = commutant_of_right(g);
    CAPTURE(name);
    for (const auto& t : basis) {
      for (int x = 0; x < g->size(); ++x) {
        Mat r = right_operator(delta(g, x)).m;
        CHECK((t.m * r - r * t.m).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("left convolutions admit functionals, outsiders are rejected") {
  auto g = catalog("pair:2");
  Rng rng(9);
  GFunction f(g, rng.cgauss_vec(g->size()));
  CHECK_NOTHROW(alpha_from_operator(left_operator(f)));

  ModuleOperator bad{g, Mat::Zero(4, 4)};
  bad.m(0, 2) = C(1.0, 0.0);
  CHECK_THROWS_AS(alpha_from_operator(bad), std::invalid_argument);
}

TEST_CASE("functional of a left convolution reads off the kernel") {
  auto g = catalog("cyclic:3");
  Rng rng(13);
  GFunction f(g, rng.cgauss_vec(g->size()));
  ModuleFunctional al = alpha_from_operator(left_operator(f));
  for (int x = 0; x < g->size(); ++x)
    for (int u = 0; u < g->units(); ++u) {
      C want = g->r(x) == u ? std::conj(f.v(x)) : C(0.0, 0.0);
      CHECK(std::abs(al.a(u, x) - want) < 1e-12);
    }
  GFunction phi(g, rng.cgauss_vec(g->size()));
  DFunction lhs = al.apply(phi);
  DFunction rhs = e2_inner(f, phi);
  CHECK((lhs.v - rhs.v).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("operator and functional round trips") {
  for (const auto& name : {"pair:2", "cyclic:3", "action:swap"}) {
    auto g = catalog(name);
    Rng rng(17);
    CAPTURE(name);
    for (int k = 0; k < 3; ++k) {
      ModuleOperator t = random_commutant_element(g, rng);
      ModuleFunctional al = alpha_from_operator(t, 1e-7);
      double resid = -1.0;
      ModuleOperator back = operator_from_alpha(al, &resid);
      CHECK((back.m - t.m).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(resid < 1e-9);
    }
  }
}

TEST_CASE("a scrambled functional reports its residual") {
  auto g = catalog("pair:2");
  Rng rng(19);
  ModuleFunctional al{g, Mat(g->units(), g->size())};
  for (int u = 0; u < g->units(); ++u)
    for (int x = 0; x < g->size(); ++x) al.a(u, x) = rng.cgauss();
  double resid = -1.0;
  operator_from_alpha(al, &resid);
  CHECK(resid > 1e-6);
}

TEST_CASE("operator norm is the reduced norm for right convolutions") {
  for (const auto& name : {"sym:3", "bundle:z2z3"}) {
    auto g = catalog(name);
    Rng rng(23);
    GFunction f(g, rng.cgauss_vec(g->size()));
    OpNormBounds b = operator_norm_e2(right_operator(f));
    CAPTURE(name);
    CHECK(b.exact);
    CHECK(b.lower == b.upper);
    CHECK(b.upper == doctest::Approx(reduced_norm(f)).epsilon(1e-10));
  }
}

TEST_CASE("norm bounds bracket and honor the cap") {
  auto g = catalog("pair:3");
  Rng rng(29);
  GFunction f(g, rng.cgauss_vec(g->size()));
  ModuleOperator t = left_operator(f);
  OpNormBounds b = operator_norm_e2(t, 1);
  CHECK_FALSE(b.exact);
  CHECK(b.lower <= b.upper + 1e-12);
  CHECK(b.lower > 0.0);
  OpNormBounds capped = operator_norm_e2(t, 1, b.lower);
  CHECK(capped.upper == doctest::Approx(b.lower));
}

TEST_CASE("functional norm witnesses the operator norm") {
  auto g = catalog("sym:3");
  ModuleOperator id{g, Mat::Identity(g->size(), g->size())};
  IsometryReport rep = isometry_check(id, 5, 7);
  CHECK(rep.op.exact);
  CHECK(rep.op.upper == doctest::Approx(1.0));
  CHECK(rep.consistent);
  CHECK(rep.functional_lower == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.gap < 1e-6);

  auto h = catalog("pair:2");
  Rng rng(31);
  GFunction f(h, rng.cgauss_vec(h->size()));
  IsometryReport rep2 = isometry_check(left_operator(f), 8, 11);
  CHECK(rep2.consistent);
  CHECK(rep2.functional_lower >= rep2.op.lower - 1e-6 * (1.0 + rep2.op.lower));
  CHECK(rep2.functional_lower <= rep2.op.upper + 1e-8);
}

TEST_CASE("multiplication operators on the unit space") {
  auto g = catalog("pair:3");
  Mat r = Mat::Zero(3, 3);
  r(0, 0) = C(1.0, 2.0);
  r(1, 1) = C(-0.5, 0.0);
  r(2, 2) = C(0.0, 3.0);
  DFunction k = support_multiplier_extract(g, r);
  for (int u = 0; u < 3; ++u) CHECK(k.v(u) == r(u, u));

  r(0, 2) = C(1e-6, 0.0);
  CHECK_THROWS_AS(support_multiplier_extract(g, r), std::invalid_argument);
  Mat wrong = Mat::Zero(2, 2);
  CHECK_THROWS_AS(support_multiplier_extract(g, wrong), std::invalid_argument);
}
