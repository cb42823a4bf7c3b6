#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gha/bisection.hpp"
#include "gha/catalog.hpp"
#include "gha/norms.hpp"
#include "gha/posdef.hpp"
#include "gha/suite.hpp"
#include "gha/vn.hpp"

namespace py = pybind11;
using namespace gha;

namespace {

// python-facing handle; the core passes shared_ptr<const Groupoid> around,
// which cannot serve as a pybind11 holder directly
struct PyGroupoid {
  GroupoidPtr p;
};

NormOptions make_opts(double tol, int max_iter, uint64_t seed) {
  NormOptions o;
  o.tol = tol;
  o.max_iter = max_iter;
  o.seed = seed;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "harmonic analysis on finite groupoids";

  py::class_<PyGroupoid>(m, "Groupoid")
      .def(py::init([](int n_units, std::vector<int> r, std::vector<int> s,
                       std::vector<int> inv, std::vector<int> table,
                       std::string name) {
             return PyGroupoid{std::make_shared<const Groupoid>(
                 n_units, std::move(r), std::move(s), std::move(inv),
                 std::move(table), std::move(name))};
           }),
           py::arg("n_units"), py::arg("r"), py::arg("s"), py::arg("inv"),
           py::arg("compose_table"), py::arg("name") = "custom")
      .def("size", [](const PyGroupoid& g) { return g.p->size(); })
      .def("units", [](const PyGroupoid& g) { return g.p->units(); })
      .def("r", [](const PyGroupoid& g, int x) { return g.p->r(x); })
      .def("s", [](const PyGroupoid& g, int x) { return g.p->s(x); })
      .def("inv", [](const PyGroupoid& g, int x) { return g.p->inv(x); })
      .def("compose",
           [](const PyGroupoid& g, int x, int y) { return g.p->compose(x, y); })
      .def("r_fiber",
           [](const PyGroupoid& g, int u) { return g.p->r_fiber(u); })
      .def("s_fiber",
           [](const PyGroupoid& g, int u) { return g.p->s_fiber(u); })
      .def("name", [](const PyGroupoid& g) { return g.p->name(); })
      .def("digest", [](const PyGroupoid& g) { return g.p->digest(); })
      .def("validate",
           [](const PyGroupoid& g) { return g.p->validate().violations; })
      .def("__repr__", [](const PyGroupoid& g) {
        return "<Groupoid " + g.p->name() + " with " +
               std::to_string(g.p->size()) + " arrows>";
      });

  m.def(
      "pair_groupoid", [](int n) { return PyGroupoid{pair_groupoid(n)}; },
      py::arg("n"));
  m.def(
      "group_groupoid",
      [](const std::vector<std::vector<int>>& table, const std::string& name) {
        return PyGroupoid{group_groupoid(table, name)};
      },
      py::arg("table"), py::arg("name"));
  m.def(
      "group_bundle",
      [](const std::vector<std::vector<std::vector<int>>>& tables,
         const std::string& name) {
        return PyGroupoid{group_bundle(tables, name)};
      },
      py::arg("tables"), py::arg("name"));
  m.def(
      "action_groupoid",
      [](int n_points, const std::vector<std::vector<int>>& table,
         const std::vector<std::vector<int>>& act, const std::string& name) {
        return PyGroupoid{action_groupoid(n_points, table, act, name)};
      },
      py::arg("n_points"), py::arg("group_table"), py::arg("act"),
      py::arg("name"));
  m.def(
      "reverse", [](const PyGroupoid& g) { return PyGroupoid{reverse(g.p)}; },
      py::arg("g"));
  m.def(
      "catalog", [](const std::string& name) { return PyGroupoid{catalog(name)}; },
      py::arg("name"));
  m.def("catalog_names", &catalog_names);

  m.def(
      "convolve",
      [](const PyGroupoid& g, const Vec& f, const Vec& h) {
        return convolve(GFunction(g.p, f), GFunction(g.p, h)).v;
      },
      py::arg("g"), py::arg("f"), py::arg("h"));
  m.def(
      "involution",
      [](const PyGroupoid& g, const Vec& f) {
        return involution(GFunction(g.p, f)).v;
      },
      py::arg("g"), py::arg("f"));
  m.def(
      "reduced_norm",
      [](const PyGroupoid& g, const Vec& f) {
        return reduced_norm(GFunction(g.p, f));
      },
      py::arg("g"), py::arg("f"));

  m.def(
      "is_positive_definite",
      [](const PyGroupoid& g, const Vec& f, double tol) {
        return is_positive_definite(GFunction(g.p, f), tol).pd;
      },
      py::arg("g"), py::arg("f"), py::arg("tol") = 1e-9);
  m.def(
      "random_pd",
      [](const PyGroupoid& g, uint64_t seed) {
        Rng rng(seed);
        HilbertBundle b = random_bundle(g.p, rng);
        BundleSection xi = random_section(b, rng);
        return coefficient(b, xi, xi).v;
      },
      py::arg("g"), py::arg("seed") = 0);
  m.def(
      "gns_roundtrip_error",
      [](const PyGroupoid& g, const Vec& f) {
        GFunction phi(g.p, f);
        GnsResult gr = gns_bundle(phi);
        return (coefficient(gr.bundle, gr.cyclic, gr.cyclic).v - phi.v)
            .cwiseAbs()
            .maxCoeff();
      },
      py::arg("g"), py::arg("f"));

  m.def(
      "bg_norm",
      [](const PyGroupoid& g, const Vec& f, double tol, int max_iter,
         uint64_t seed) {
        return bg_norm(GFunction(g.p, f), make_opts(tol, max_iter, seed));
      },
      py::arg("g"), py::arg("f"), py::arg("tol") = 1e-6,
      py::arg("max_iter") = 10000, py::arg("seed") = 0);
  m.def(
      "schur_cb_norm",
      [](const Mat& m_, double tol, int max_iter) {
        return schur_cb_norm(m_, make_opts(tol, max_iter, 0));
      },
      py::arg("m"), py::arg("tol") = 1e-6, py::arg("max_iter") = 10000);
  m.def(
      "cb_norm_interval",
      [](const PyGroupoid& g, const Vec& f, double tol, int max_iter,
         uint64_t seed) {
        NormInterval iv =
            cb_norm_interval(GFunction(g.p, f), make_opts(tol, max_iter, seed));
        return std::make_pair(iv.lower, iv.upper);
      },
      py::arg("g"), py::arg("f"), py::arg("tol") = 1e-6,
      py::arg("max_iter") = 10000, py::arg("seed") = 0);
  m.def(
      "a1_norm_interval",
      [](const PyGroupoid& g, const Vec& f, double tol, int max_iter,
         uint64_t seed) {
        NormInterval iv =
            a1_norm_interval(GFunction(g.p, f), make_opts(tol, max_iter, seed));
        return std::make_pair(iv.lower, iv.upper);
      },
      py::arg("g"), py::arg("f"), py::arg("tol") = 1e-6,
      py::arg("max_iter") = 10000, py::arg("seed") = 0);

  m.def(
      "vn_dims",
      [](const PyGroupoid& g) {
        VnDims d = vn_dims(g.p);
        return std::make_tuple(d.b_e2, d.module, d.vn, d.cred, d.intersection);
      },
      py::arg("g"));

  m.def(
      "duality_counts",
      [](const PyGroupoid& g, long long cap) {
        DualityReport rep = verify_duality(g.p, cap);
        return py::dict(py::arg("bisections") = rep.n_bisections,
                        py::arg("mult_module_maps") = rep.n_maps,
                        py::arg("bijection") = rep.bijection,
                        py::arg("every_arrow_covered") = rep.every_arrow_covered,
                        py::arg("complete") = rep.complete);
      },
      py::arg("g"), py::arg("cap") = 1000000);

  m.def(
      "acceptance_suite",
      [](double tol, uint64_t seed, int max_iter) {
        SuiteOptions so;
        so.tol = tol;
        so.seed = seed;
        so.max_iter = max_iter;
        SuiteResult res = run_acceptance_suite(so);
        py::list items;
        for (const auto& c : res.criteria)
          items.append(py::dict(py::arg("id") = c.id, py::arg("name") = c.name,
                                py::arg("pass") = c.pass,
                                py::arg("detail") = c.detail));
        return py::dict(py::arg("all_pass") = res.all_pass,
                        py::arg("criteria") = items);
      },
      py::arg("tol") = 1e-6, py::arg("seed") = 0, py::arg("max_iter") = 10000);
}
