#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "gha/catalog.hpp"
#include "gha/cfun.hpp"
#include "gha/norms.hpp"
#include "gha/posdef.hpp"

using namespace gha;
using C = std::complex<double>;

namespace {
GFunction sample_pd(const GroupoidPtr& g, Rng& rng) {
  HilbertBundle b = random_bundle(g, rng);
  BundleSection xi = random_section(b, rng);
  return coefficient(b, xi, xi);
}
}  // namespace

TEST_CASE("schur multiplier norms on small fixed matrices") {
  NormOptions opt;
  opt.tol = 2e-6;

  Mat sign(2, 2);
  sign << 1, 1, 1, -1;
  CHECK(schur_cb_norm(sign, opt) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));

  // all-ones symbol leaves the matrix alone
  Mat ones = Mat::Constant(2, 2, C(1.0, 0.0));
  CHECK(schur_cb_norm(ones, opt) == doctest::Approx(1.0).epsilon(1e-5));

  // diagonal symbol scales matrix units independently
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = C(2.0, 0.0);
  diag(1, 1) = C(-3.0, 0.0);
  CHECK(schur_cb_norm(diag, opt) == doctest::Approx(3.0).epsilon(1e-5));

  // rank one a b^T conjugates by diagonals, norm max|a| max|b|
  Mat rk1(2, 2);
  rk1 << 1, 2, 2, 4;
  CHECK(schur_cb_norm(rk1, opt) == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("unit indicator has norm one everywhere") {
  NormOptions opt;
  opt.tol = 2e-6;
  for (const auto& name : catalog_names()) {
    auto g = catalog(name);
    GFunction chi = unit_indicator(g);
    CAPTURE(name);
    CHECK(std::abs(bg_norm(chi, opt) - 1.0) < 1e-4);
    NormInterval a1 = a1_norm_interval(chi, opt);
    CHECK(a1.lower <= a1.upper + 1e-12);
    CHECK(std::abs(a1.upper - 1.0) < 1e-4);
    NormInterval cb = cb_norm_interval(chi, opt);
    CHECK(std::abs(cb.upper - 1.0) < 1e-4);
    CHECK(cb.lower <= cb.upper + 1e-9);
  }
}

TEST_CASE("point masses have norm one") {
  NormOptions opt;
  opt.tol = 1e-3;
  for (const auto& name : {"pair:3", "sym:3"}) {
    auto g = catalog(name);
    int x = g->units();  // first non-unit arrow
    GFunction d = delta(g, x);
    CAPTURE(name);
    CHECK(std::abs(bg_norm(d, opt) - 1.0) < 3e-3);
  }
}

TEST_CASE("positive definite functions attain the unit maximum") {
  NormOptions opt;
  opt.tol = 2e-6;
  Rng rng(41);
  for (const auto& name : {"cyclic:3", "bundle:z2z3"}) {
    auto g = catalog(name);
    GFunction phi = sample_pd(g, rng);
    double want = 0.0;
    for (int u = 0; u < g->units(); ++u) want = std::max(want, phi.v(u).real());
    CAPTURE(name);
    CHECK(std::abs(bg_norm(phi, opt) - want) < 1e-5 * (1.0 + want));
  }
}

TEST_CASE("homogeneity and the zero function") {
  auto g = catalog("pair:2");
  NormOptions opt;
  opt.tol = 1e-4;
  Rng rng(7);
  GFunction phi(g, rng.cgauss_vec(g->size()));
  double one = bg_norm(phi, opt);
  GFunction two(g, (2.0 * phi.v).eval());
  CHECK(bg_norm(two, opt) == doctest::Approx(2.0 * one).epsilon(1e-3));
  GFunction zero(g, Vec::Zero(g->size()));
  CHECK(bg_norm(zero, opt) == 0.0);
  NormInterval a1z = a1_norm_interval(zero, opt);
  CHECK(a1z.upper == 0.0);
}

TEST_CASE("multiplier bounds sit under the fourier stieltjes norm") {
  NormOptions opt;
  opt.tol = 2e-6;
  auto g = catalog("pair:2");
  Rng rng(11);
  GFunction phi(g, rng.cgauss_vec(g->size()));

  NormInterval cb = cb_norm_interval(phi, opt);
  CHECK(cb.lower <= cb.upper + 1e-9);
  double bg = bg_norm(phi, opt);
  CHECK(cb.upper <= bg + 1e-5 * (1.0 + bg));

  // on pair groupoids every fiber symbol is the same matrix
  Mat sym = pi_u_matrix(phi, 0);
  CHECK(std::abs(cb.upper - schur_cb_norm(sym, opt)) < 1e-9);
}

TEST_CASE("fourier norm interval collapses on a pair groupoid") {
  NormOptions opt;
  opt.tol = 2e-6;
  auto g = catalog("pair:2");
  Rng rng(23);
  GFunction phi(g, rng.cgauss_vec(g->size()));
  double bg = bg_norm(phi, opt);
  NormInterval a1 = a1_norm_interval(phi, opt);
  CHECK(a1.lower <= a1.upper + 1e-12);
  CHECK(a1.upper - bg <= 1e-3 * (1.0 + bg));
  CHECK(bg - a1.lower <= 1e-3 * (1.0 + bg));
}

TEST_CASE("interval construction rejects crossed bounds") {
  CHECK_THROWS_AS(NormInterval(2.0, 1.0, "bad"), std::logic_error);
  NormInterval ok(1.0, 2.0, "fine");
  CHECK(ok.certificate == "fine");
}
