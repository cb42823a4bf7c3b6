#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gha/catalog.hpp"
#include "gha/posdef.hpp"

using namespace gha;
using doctest::Approx;

namespace {
GFunction sample_pd(const GroupoidPtr& g, Rng& rng) {
  HilbertBundle b = random_bundle(g, rng);
  BundleSection xi = random_section(b, rng);
  return coefficient(b, xi, xi);
}
}  // namespace

TEST_CASE("unit indicator is positive definite, off unit deltas are not") {
  auto g = catalog("pair:3");
  CHECK(is_positive_definite(unit_indicator(g)).pd);
  PdReport rep = is_positive_definite(delta(g, 4));
  CHECK(!rep.pd);
  CHECK(rep.witness_unit >= 0);
}

TEST_CASE("fiber matrix convention") {
  auto g = catalog("cyclic:3");
  Rng rng(1);
  GFunction phi(g, rng.cgauss_vec(3));
  Mat k = pd_fiber_matrix(phi, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(k(i, j) == phi.v(g->compose(g->inv(i), j)));
}

TEST_CASE("rank one coefficients of the trivial bundle") {
  auto g = pair_groupoid(2);
  HilbertBundle b;
  b.gpd = g;
  b.dims = {1, 1};
  b.iso.assign(g->size(), Mat::Identity(1, 1));
  CHECK(validate_bundle(b).ok());
  BundleSection xi;
  xi.at = {Vec::Constant(1, Complex(1, 1)), Vec::Constant(1, Complex(2, 0))};
  GFunction phi = coefficient(b, xi, xi);
  for (int x = 0; x < g->size(); ++x)
    CHECK(phi.v(x) ==
          std::conj(xi.at[g->s(x)](0)) * xi.at[g->r(x)](0));
  CHECK(is_positive_definite(phi).pd);
}

TEST_CASE("random bundles validate and their coefficients are pd") {
  for (const auto& name : catalog_names()) {
    auto g = catalog(name);
    Rng rng(41);
    HilbertBundle b = random_bundle(g, rng);
    CHECK(validate_bundle(b).ok());
    BundleSection xi = random_section(b, rng);
    GFunction phi = coefficient(b, xi, xi);
    CHECK(is_positive_definite(phi, 1e-9).pd);
  }
}

TEST_CASE("corrupted bundles are rejected") {
  auto g = catalog("cyclic:2");
  Rng rng(4);
  HilbertBundle b = random_bundle(g, rng);
  b.iso[1] *= 2.0;  // no longer unitary
  CHECK(!validate_bundle(b).ok());
}

TEST_CASE("gns roundtrip across the catalog") {
  for (const auto& name : catalog_names()) {
    auto g = catalog(name);
    Rng rng(7);
    for (int k = 0; k < 5; ++k) {
      GFunction phi = sample_pd(g, rng);
      GnsResult gns = gns_bundle(phi);
      CHECK(validate_bundle(gns.bundle).ok());
      GFunction back = coefficient(gns.bundle, gns.cyclic, gns.cyclic);
      CHECK((back.v - phi.v).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("gns rejects functions that are not positive definite") {
  auto g = catalog("pair:2");
  CHECK_THROWS_AS(gns_bundle(delta(g, 2)), std::invalid_argument);
}

TEST_CASE("regular realization recovers the function and its norm") {
  for (const auto& name : {"pair:3", "sym:3", "action:swap"}) {
    auto g = catalog(name);
    Rng rng(13);
    GFunction phi = sample_pd(g, rng);
    GFunction xi = pd_compact_to_regular(phi);
    GFunction back = convolve(xi, involution(xi));
    CHECK((back.v - phi.v).cwiseAbs().maxCoeff() < 1e-10);
    double peak = 0.0;
    for (int u = 0; u < g->units(); ++u)
      peak = std::max(peak, phi.v(u).real());
    CHECK(e2_norm(xi) * e2_norm(xi) == Approx(peak).epsilon(1e-9));
  }
}

TEST_CASE("regular realization handles unit gaps in the support") {
  auto g = catalog("bundle:z2z3");
  HilbertBundle b;
  b.gpd = g;
  b.dims = {1, 1};
  b.iso.assign(g->size(), Mat::Identity(1, 1));
  BundleSection xi;
  xi.at = {Vec::Constant(1, Complex(2, 0)), Vec::Zero(1)};
  GFunction phi = coefficient(b, xi, xi);  // vanishes over the second unit
  GFunction reg = pd_compact_to_regular(phi);
  GFunction back = convolve(reg, involution(reg));
  CHECK((back.v - phi.v).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("off diagonalization produces a pd function with the right block") {
  for (const auto& name : {"pair:2", "cyclic:3", "action:swap"}) {
    auto g = catalog(name);
    Rng rng(19);
    HilbertBundle b = random_bundle(g, rng);
    BundleSection xi = random_section(b, rng);
    BundleSection eta = random_section(b, rng);
    GFunction ref = coefficient(b, xi, eta);
    OffDiagonal od = off_diagonalize(b, xi, eta);
    CHECK(is_positive_definite(od.F, 1e-8).pd);
    CHECK((od.block01.v - ref.v).cwiseAbs().maxCoeff() < 1e-12);
    // diagonal blocks carry the two self coefficients
    GFunction see = coefficient(b, eta, eta);
    GFunction sxx = coefficient(b, xi, xi);
    for (int x = 0; x < g->size(); ++x) {
      CHECK(std::abs(od.F.v(od.prod.arrow(x, 0, 0)) - see.v(x)) < 1e-12);
      CHECK(std::abs(od.F.v(od.prod.arrow(x, 1, 1)) - sxx.v(x)) < 1e-12);
    }
    FromOffDiagonal back = from_off_diagonal(od.prod, od.F);
    CHECK((back.phi.v - ref.v).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(validate_bundle(back.bundle).ok());
    GFunction again = coefficient(back.bundle, back.eta, back.xi);
    CHECK((2.0 * again.v - ref.v).cwiseAbs().maxCoeff() < 1e-10);
  }
}
