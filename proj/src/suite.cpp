#include "gha/suite.hpp"

#include <cmath>
#include <cstdio>
#include <exception>

#include "gha/bisection.hpp"
#include "gha/catalog.hpp"
#include "gha/cfun.hpp"
#include "gha/norms.hpp"
#include "gha/posdef.hpp"
#include "gha/vn.hpp"

namespace gha {
namespace {

std::string fmt(double x) {
  char b[40];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

GFunction random_fn(const GroupoidPtr& g, Rng& rng) {
  return GFunction(g, rng.cgauss_vec(g->size()));
}

GFunction random_pd(const GroupoidPtr& g, Rng& rng) {
  HilbertBundle b = random_bundle(g, rng);
  BundleSection xi = random_section(b, rng);
  return coefficient(b, xi, xi);
}

double gdiff(const GFunction& a, const GFunction& b) {
  return (a.v - b.v).cwiseAbs().maxCoeff();
}

GFunction pointwise(const GFunction& a, const GFunction& b) {
  GFunction out(a.gpd);
  out.v = a.v.cwiseProduct(b.v);
  return out;
}

CriterionResult c1_dimensions() {
  bool ok = true;
  std::string detail;
  for (int n : {2, 3, 4}) {
    VnDims d = vn_dims(pair_groupoid(n));
    bool here = d.b_e2 == n * n * n * n && d.module == n * n * n &&
                d.vn == n * n && d.cred == n * n && d.intersection == 1;
    ok = ok && here;
    detail += "n=" + std::to_string(n) + ":" + std::to_string(d.b_e2) + "/" +
              std::to_string(d.module) + "/" + std::to_string(d.vn) + "/" +
              std::to_string(d.cred) + "/" + std::to_string(d.intersection) +
              (here ? " " : "(mismatch) ");
  }
  return {1, "vn dimension table on pair groupoids", ok, detail};
}

CriterionResult c2_pd_norm(const SuiteOptions& opt) {
  NormOptions no;
  no.tol = 2e-6;
  no.max_iter = opt.max_iter;
  double worst = 0.0;
  int cases = 0;
  for (const auto& name : catalog_names()) {
    auto g = catalog(name);
    Rng rng(opt.seed * 1000003u + 11u + cases);
    for (int k = 0; k < 25; ++k) {
      GFunction phi = random_pd(g, rng);
      double expect = 0.0;
      for (int u = 0; u < g->units(); ++u)
        expect = std::max(expect, phi.v(u).real());
      double got = bg_norm(phi, no);
      worst = std::max(worst, std::abs(got - expect));
      ++cases;
    }
  }
  bool ok = worst <= 1e-5;
  return {2, "bg norm of positive definite functions equals max unit value",
          ok, "worst " + fmt(worst) + " over " + std::to_string(cases) +
              " cases (tol 1e-5)"};
}

CriterionResult c3_pair_coincidence(const SuiteOptions& opt) {
  NormOptions no;
  no.tol = 2e-5;
  no.max_iter = opt.max_iter;
  double worst_schur = 0.0, worst_a1 = 0.0;
  for (const auto& name : {std::string("pair:2"), std::string("pair:3")}) {
    auto g = catalog(name);
    Rng rng(opt.seed * 7919u + 23u + g->size());
    for (int k = 0; k < 10; ++k) {
      GFunction phi = random_fn(g, rng);
      double bg = bg_norm(phi, no);
      double schur = schur_cb_norm(pi_u_matrix(phi, 0), no);
      worst_schur = std::max(worst_schur, std::abs(bg - schur));
      NormOptions na = no;
      na.seed = opt.seed + 1000 * k;
      NormInterval a1 = a1_norm_interval(phi, na);
      worst_a1 = std::max(worst_a1,
                          std::max(a1.upper - bg, bg - a1.lower));
    }
  }
  bool ok = worst_schur <= 1e-4 && worst_a1 <= 1e-3;
  return {3, "pair groupoid norm coincidences", ok,
          "bg vs schur worst " + fmt(worst_schur) +
              " (tol 1e-4), a1 collapse worst " + fmt(worst_a1) +
              " (tol 1e-3)"};
}

CriterionResult c4_cb_bound(const SuiteOptions& opt) {
  NormOptions no;
  no.tol = 2e-6;
  no.max_iter = opt.max_iter;
  double worst = -1e30;
  int cases = 0;
  for (const auto& name : catalog_names()) {
    auto g = catalog(name);
    Rng rng(opt.seed * 4241u + 5u + g->size());
    for (int k = 0; k < 5; ++k) {
      GFunction phi = random_fn(g, rng);
      NormOptions nc = no;
      nc.seed = opt.seed + 100 * cases;
      NormInterval cb = cb_norm_interval(phi, nc);
      double bg = bg_norm(phi, no);
      worst = std::max(worst, cb.upper - bg);
      ++cases;
    }
  }
  bool ok = worst <= 1e-5;
  return {4, "cb norm upper bound stays below bg norm", ok,
          "worst excess " + fmt(worst) + " over " + std::to_string(cases) +
              " cases (tol 1e-5)"};
}

CriterionResult c5_roundtrips(const SuiteOptions& opt) {
  double worst = 0.0;
  int cases = 0;
  for (const auto& name : catalog_names()) {
    auto g = catalog(name);
    Rng rng(opt.seed * 271u + 77u + g->size());
    for (int k = 0; k < 25; ++k) {
      GFunction phi = random_pd(g, rng);
      GnsResult gns = gns_bundle(phi);
      worst = std::max(
          worst, gdiff(coefficient(gns.bundle, gns.cyclic, gns.cyclic), phi));
      GFunction xi = pd_compact_to_regular(phi);
      worst = std::max(worst, gdiff(convolve(xi, involution(xi)), phi));
      ++cases;
    }
  }
  bool ok = worst <= 1e-8;
  return {5, "gns and regular realization roundtrips", ok,
          "worst " + fmt(worst) + " over " + std::to_string(cases) +
              " cases (tol 1e-8)"};
}

CriterionResult c6_offdiag(const SuiteOptions& opt) {
  double worst = 0.0;
  for (const auto& name : {std::string("pair:2"), std::string("cyclic:3")}) {
    auto g = catalog(name);
    Rng rng(opt.seed * 33331u + 3u + g->size());
    for (int k = 0; k < 10; ++k) {
      HilbertBundle b = random_bundle(g, rng);
      BundleSection xi = random_section(b, rng);
      BundleSection eta = random_section(b, rng);
      GFunction ref = coefficient(b, xi, eta);
      OffDiagonal od = off_diagonalize(b, xi, eta);
      worst = std::max(worst, gdiff(od.block01, ref));
      FromOffDiagonal back = from_off_diagonal(od.prod, od.F);
      worst = std::max(worst, gdiff(back.phi, ref));
    }
  }
  bool ok = worst <= 1e-8;
  return {6, "off diagonalization roundtrip", ok,
          "worst " + fmt(worst) + " (tol 1e-8)"};
}

CriterionResult c7_duality() {
  struct Expect {
    const char* name;
    long long count;
  };
  const Expect table[] = {{"pair:2", 2},   {"pair:3", 6},  {"pair:4", 24},
                          {"cyclic:2", 2}, {"cyclic:3", 3}, {"sym:3", 6},
                          {"bundle:z2z3", 6}};
  bool ok = true;
  std::string detail;
  for (const auto& e : table) {
    DualityReport rep = verify_duality(catalog(e.name));
    bool here = rep.complete && rep.bijection && rep.n_bisections == e.count &&
                rep.n_maps == e.count;
    ok = ok && here;
    detail += std::string(e.name) + ":" + std::to_string(rep.n_bisections) +
              "/" + std::to_string(rep.n_maps) + (here ? " " : "(mismatch) ");
  }
  DualityReport extra = verify_duality(catalog("action:swap"));
  if (!(extra.complete && extra.bijection)) {
    ok = false;
    detail += "action:swap bijection failed ";
  }
  return {7, "bisection duality counts and bijection", ok, detail};
}

CriterionResult c8_correspondence(const SuiteOptions& opt) {
  auto g = catalog("pair:2");
  auto basis = commutant_of_right(g);
  Rng rng(opt.seed * 52361u + 41u);
  double worst_rt = 0.0, worst_al = 0.0, worst_lf = 0.0;
  for (int k = 0; k < 10; ++k) {
    Mat m = Mat::Zero(g->size(), g->size());
    for (const auto& b : basis) m += rng.cgauss() * b.m;
    m /= m.cwiseAbs().maxCoeff();
    ModuleOperator t{g, m};
    ModuleFunctional al = alpha_from_operator(t);
    ModuleOperator back = operator_from_alpha(al);
    worst_rt = std::max(worst_rt, (back.m - t.m).cwiseAbs().maxCoeff());
    for (int rep = 0; rep < 5; ++rep) {
      GFunction f = random_fn(g, rng), h = random_fn(g, rng);
      DFunction lhs = al.apply(convolve(h, involution(f)));
      GFunction tf(g, (t.m * f.v).eval());
      DFunction rhs = e2_inner(tf, h);
      worst_al = std::max(worst_al, (lhs.v - rhs.v).cwiseAbs().maxCoeff());
    }
    GFunction F = random_fn(g, rng);
    ModuleFunctional alf = alpha_from_operator(left_operator(F));
    for (int rep = 0; rep < 5; ++rep) {
      GFunction phi = random_fn(g, rng);
      DFunction lhs = alf.apply(phi);
      DFunction rhs = e2_inner(F, phi);
      worst_lf = std::max(worst_lf, (lhs.v - rhs.v).cwiseAbs().maxCoeff());
    }
  }
  bool ok = worst_rt <= 1e-9 && worst_al <= 1e-10 && worst_lf <= 1e-13;
  return {8, "operator functional correspondence", ok,
          "roundtrip " + fmt(worst_rt) + " (tol 1e-9), pairing identity " +
              fmt(worst_al) + " (tol 1e-10), left convolution case " +
              fmt(worst_lf)};
}

CriterionResult c9_properties(const SuiteOptions& opt) {
  const double idtol = 1e-12;
  double tol9 = std::max(opt.tol, 1e-3);
  NormOptions no;
  no.tol = tol9;
  no.max_iter = opt.max_iter;
  double worst_id = 0.0, worst_norm = 0.0;
  std::string first_fail;
  for (const auto& name : catalog_names()) {
    auto g = catalog(name);
    auto gr = reverse(g);
    auto bis = enumerate_bisections(g);
    Rng rng(opt.seed);
    auto basis = commutant_of_right(g);
    for (int trial = 0; trial < 50; ++trial) {
      GFunction f = random_fn(g, rng), h = random_fn(g, rng),
                w = random_fn(g, rng);
      DFunction b(g, rng.cgauss_vec(g->units()));

      auto check = [&](const char* label, double err, double lim) {
        if (err > lim && first_fail.empty())
          first_fail = std::string(label) + " on " + name + " trial " +
                       std::to_string(trial) + " err " + fmt(err);
        if (lim == idtol)
          worst_id = std::max(worst_id, err);
        else
          worst_norm = std::max(worst_norm, err);
      };

      check("associativity",
            gdiff(convolve(convolve(f, h), w), convolve(f, convolve(h, w))),
            idtol);
      check("involution antihomomorphism",
            gdiff(involution(convolve(f, h)),
                  convolve(involution(h), involution(f))),
            idtol);
      check("involution involutive", gdiff(involution(involution(f)), f),
            idtol);
      check("module action right",
            gdiff(module_act(b, convolve(f, h), Side::right),
                  convolve(module_act(b, f, Side::right), h)),
            idtol);
      check("module action left",
            gdiff(module_act(b, convolve(f, h), Side::left),
                  convolve(f, module_act(b, h, Side::left))),
            idtol);
      if (!bis.items.empty()) {
        const Bisection& a = bis.items[rng.pick((int)bis.items.size())];
        check("bisection translation left",
              gdiff(bisection_act(a, convolve(f, h), Side::left),
                    convolve(f, bisection_act(a, h, Side::left))),
              idtol);
        check("bisection translation right",
              gdiff(bisection_act(a, convolve(f, h), Side::right),
                    convolve(bisection_act(a, f, Side::right), h)),
              idtol);
      }
      {
        DFunction lhs = e2_inner(convolve(w, f), h);
        DFunction rhs = e2_inner(w, convolve(h, involution(f)));
        check("left convolution pairing",
              (lhs.v - rhs.v).cwiseAbs().maxCoeff(), idtol);
      }
      if (!basis.empty()) {
        Mat m = Mat::Zero(g->size(), g->size());
        for (const auto& bb : basis) m += rng.cgauss() * bb.m;
        GFunction arg = convolve(f, involution(h));
        Vec timg = m * arg.v;
        GFunction tf(g, (m * f.v).eval());
        DFunction rhs = e2_inner(tf, h);
        double err = 0.0;
        for (int u = 0; u < g->units(); ++u)
          err = std::max(err, std::abs(std::conj(timg(u)) - rhs.v(u)));
        check("commutant pairing identity", err, idtol);
      }
      {
        GFunction phi = random_fn(g, rng), psi = random_fn(g, rng);
        double v = bg_norm(phi, no);
        check("bg involution symmetry",
              std::abs(bg_norm(involution(phi), no) - v), 2 * tol9);
        check("bg conjugation symmetry",
              std::abs(bg_norm(conjugate(phi), no) - v), 2 * tol9);
        double vp = bg_norm(psi, no);
        double vprod = bg_norm(pointwise(phi, psi), no);
        check("bg submultiplicative", vprod - v * vp, 2 * tol9);
        GFunction phir(gr, phi.v);
        check("bg reversal invariance", std::abs(bg_norm(phir, no) - v),
              2 * tol9);
      }
    }
  }
  bool ok = first_fail.empty();
  return {9, "algebraic property suite", ok,
          ok ? "identities worst " + fmt(worst_id) + ", norm checks worst " +
                   fmt(worst_norm) + " (limit " + fmt(2 * tol9) + ")"
             : first_fail};
}

CriterionResult c10_schur_oracle(const SuiteOptions& opt) {
  NormOptions no;
  no.tol = 2e-6;
  no.max_iter = opt.max_iter;
  Mat m(2, 2);
  m << 1.0, 1.0, 1.0, -1.0;
  double got = schur_cb_norm(m, no);
  double err = std::abs(got - std::sqrt(2.0));
  bool ok = err <= 1e-5;
  return {10, "schur norm oracle", ok,
          "got " + fmt(got) + ", deviation " + fmt(err) + " (tol 1e-5)"};
}

}  // namespace

SuiteResult run_acceptance_suite(const SuiteOptions& opt) {
  SuiteResult out;
  auto push = [&](CriterionResult r) {
    if (opt.log)
      (*opt.log) << "[" << (r.id < 10 ? " " : "") << r.id << "] "
                 << (r.pass ? "PASS" : "FAIL") << " " << r.name << " -- "
                 << r.detail << "\n"
                 << std::flush;
    out.criteria.push_back(std::move(r));
  };
  auto guard = [&](int id, const char* name, auto fn) {
    try {
      push(fn());
    } catch (const std::exception& e) {
      push({id, name, false, std::string("exception: ") + e.what()});
    }
  };
  guard(1, "vn dimension table on pair groupoids", [&] { return c1_dimensions(); });
  guard(2, "bg norm of positive definite functions equals max unit value",
        [&] { return c2_pd_norm(opt); });
  guard(3, "pair groupoid norm coincidences", [&] { return c3_pair_coincidence(opt); });
  guard(4, "cb norm upper bound stays below bg norm", [&] { return c4_cb_bound(opt); });
  guard(5, "gns and regular realization roundtrips", [&] { return c5_roundtrips(opt); });
  guard(6, "off diagonalization roundtrip", [&] { return c6_offdiag(opt); });
  guard(7, "bisection duality counts and bijection", [&] { return c7_duality(); });
  guard(8, "operator functional correspondence", [&] { return c8_correspondence(opt); });
  guard(9, "algebraic property suite", [&] { return c9_properties(opt); });
  guard(10, "schur norm oracle", [&] { return c10_schur_oracle(opt); });
  out.all_pass = true;
  for (const auto& c : out.criteria) out.all_pass = out.all_pass && c.pass;
  return out;
}

}  // namespace gha
