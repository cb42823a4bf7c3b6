#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gha/bisection.hpp"
#include "gha/catalog.hpp"
#include "gha/json_io.hpp"
#include "gha/norms.hpp"
#include "gha/posdef.hpp"
#include "gha/suite.hpp"
#include "gha/vn.hpp"

namespace {

// exit codes: 0 ok, 1 check failed, 2 parse error, 3 validation failure,
// 4 solver non-convergence

gha::GroupoidPtr load_groupoid(const std::string& src) {
  for (const auto& name : gha::catalog_names())
    if (name == src) return gha::catalog(name);
  if (src.find('/') == std::string::npos &&
      src.find(".json") == std::string::npos)
    throw std::invalid_argument("unknown groupoid: " + src);
  return gha::groupoid_from_json(gha::load_json_file(src));
}

void emit(const gha::Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    gha::write_json_file(out_path, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite groupoid harmonic analysis workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string gsrc = "pair:2";
  std::string out_path;
  std::string fn_path;
  double tol = 1e-6;
  uint64_t seed = 0;
  int max_iter = 10000;
  app.add_option("--tol", tol, "solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "rng seed");
  app.add_option("--max-iter", max_iter, "solver iteration budget");
  app.add_option("--out", out_path, "write the JSON report here");

  auto add_gopt = [&](CLI::App* sub) {
    sub->add_option("--groupoid", gsrc,
                    "catalog name or groupoid JSON file path");
  };

  auto* validate = app.add_subcommand("validate", "check the groupoid axioms");
  add_gopt(validate);

  auto* norms = app.add_subcommand("norms", "bg, cb and a1 norm report");
  add_gopt(norms);
  norms->add_option("function", fn_path, "function JSON file")->required();

  auto* pd = app.add_subcommand("pd-check", "positive definiteness report");
  add_gopt(pd);
  pd->add_option("function", fn_path, "function JSON file")->required();

  auto* gns = app.add_subcommand("gns-roundtrip",
                                 "gns and regular realization roundtrips");
  add_gopt(gns);
  gns->add_option("function", fn_path,
                  "function JSON file; random PD data when omitted");

  auto* vnd = app.add_subcommand("vn-dims", "dimension report of the operator spaces");
  add_gopt(vnd);

  auto* dual = app.add_subcommand("duality",
                                  "enumerate bisections and functionals");
  add_gopt(dual);

  auto* cat = app.add_subcommand("catalog",
                                 "run the verification suite over the builtin groupoids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    gha::NormOptions no;
    no.tol = tol;
    no.max_iter = max_iter;
    no.seed = seed;

    if (validate->parsed()) {
      auto g = load_groupoid(gsrc);  // throws on violations for json input
      auto rep = g->validate();
      gha::Json j;
      j["schema"] = gha::kSchemaVersion;
      j["groupoid"] = g->name();
      j["arrows"] = g->size();
      j["units"] = g->units();
      j["ok"] = rep.ok();
      j["violations"] = rep.violations;
      emit(j, out_path);
      return rep.ok() ? 0 : 3;
    }

    if (norms->parsed()) {
      auto g = load_groupoid(gsrc);
      auto f = gha::gfunction_from_json(gha::load_json_file(fn_path), g);
      gha::BgResult bg = gha::bg_norm_full(f, no);
      gha::NormInterval bgi(bg.sdp.lo, bg.sdp.hi,
                            "sdp bracket, " + std::to_string(bg.sdp.iterations) +
                                " newton steps");
      gha::Json j;
      j["schema"] = gha::kSchemaVersion;
      j["groupoid"] = g->name();
      j["bg"] = gha::norm_report(bgi);
      j["cb"] = gha::norm_report(gha::cb_norm_interval(f, no));
      j["a1"] = gha::norm_report(gha::a1_norm_interval(f, no));
      emit(j, out_path);
      return 0;
    }

    if (pd->parsed()) {
      auto g = load_groupoid(gsrc);
      auto f = gha::gfunction_from_json(gha::load_json_file(fn_path), g);
      auto rep = gha::is_positive_definite(f, tol);
      gha::Json j;
      j["schema"] = gha::kSchemaVersion;
      j["groupoid"] = g->name();
      j["positive_definite"] = rep.pd;
      std::vector<double> eigs(rep.min_eigs.data(),
                               rep.min_eigs.data() + rep.min_eigs.size());
      j["min_eigs"] = eigs;
      j["witness_unit"] = rep.witness_unit;
      emit(j, out_path);
      return rep.pd ? 0 : 1;
    }

    if (gns->parsed()) {
      auto g = load_groupoid(gsrc);
      gha::GFunction f;
      if (fn_path.empty()) {
        gha::Rng rng(seed);
        auto b = gha::random_bundle(g, rng);
        auto xi = gha::random_section(b, rng);
        f = gha::coefficient(b, xi, xi);
      } else {
        f = gha::gfunction_from_json(gha::load_json_file(fn_path), g);
      }
      auto gr = gha::gns_bundle(f);
      double gns_err =
          (gha::coefficient(gr.bundle, gr.cyclic, gr.cyclic).v - f.v)
              .cwiseAbs()
              .maxCoeff();
      auto xi = gha::pd_compact_to_regular(f);
      double reg_err =
          (gha::convolve(xi, gha::involution(xi)).v - f.v).cwiseAbs().maxCoeff();
      gha::Json j;
      j["schema"] = gha::kSchemaVersion;
      j["groupoid"] = g->name();
      j["fiber_dims"] = gr.bundle.dims;
      j["gns_roundtrip_error"] = gns_err;
      j["regular_roundtrip_error"] = reg_err;
      j["ok"] = gns_err <= 1e-8 && reg_err <= 1e-8;
      emit(j, out_path);
      return (gns_err <= 1e-8 && reg_err <= 1e-8) ? 0 : 1;
    }

    if (vnd->parsed()) {
      auto g = load_groupoid(gsrc);
      emit(gha::vn_dims_report(gha::vn_dims(g)), out_path);
      return 0;
    }

    if (dual->parsed()) {
      auto g = load_groupoid(gsrc);
      auto rep = gha::verify_duality(g);
      emit(gha::duality_report(rep), out_path);
      return rep.complete && rep.bijection ? 0 : 1;
    }

    if (cat->parsed()) {
      gha::SuiteOptions so;
      so.tol = tol;
      so.seed = seed;
      so.max_iter = max_iter;
      so.log = &std::cerr;
      auto res = gha::run_acceptance_suite(so);
      gha::Json j;
      j["schema"] = gha::kSchemaVersion;
      j["all_pass"] = res.all_pass;
      gha::Json items = gha::Json::array();
      for (const auto& c : res.criteria)
        items.push_back({{"id", c.id},
                         {"name", c.name},
                         {"pass", c.pass},
                         {"detail", c.detail}});
      j["criteria"] = items;
      emit(j, out_path);
      return res.all_pass ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 3;
  } catch (const gha::Json::exception& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error& e) {
    std::cerr << "solver or io failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
