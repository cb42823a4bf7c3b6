#include "gha/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace gha {

Json groupoid_to_json(const Groupoid& g) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["name"] = g.name();
  Json units = Json::array();
  for (int u = 0; u < g.units(); ++u) units.push_back(u);
  j["units"] = units;
  Json arrows = Json::array();
  for (int x = 0; x < g.size(); ++x)
    arrows.push_back(
        {{"id", x}, {"r", g.r(x)}, {"s", g.s(x)}, {"inv", g.inv(x)}});
  j["arrows"] = arrows;
  Json compose = Json::array();
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y)
      if (g.composable(x, y)) compose.push_back({x, y, g.compose(x, y)});
  j["compose"] = compose;
  return j;
}

GroupoidPtr groupoid_from_json(const Json& j) {
  const auto& units = j.at("units");
  const auto& arrows = j.at("arrows");
  const int nu = static_cast<int>(units.size());
  const int n = static_cast<int>(arrows.size());
  for (int u = 0; u < nu; ++u)
    if (units[u].get<int>() != u)
      throw std::invalid_argument("groupoid json: units must be 0..k-1");
  std::vector<int> r(n, -1), s(n, -1), inv(n, -1);
  std::vector<char> seen(n, 0);
  for (const auto& a : arrows) {
    int id = a.at("id").get<int>();
    if (id < 0 || id >= n || seen[id])
      throw std::invalid_argument("groupoid json: arrow ids must be dense");
    seen[id] = 1;
    r[id] = a.at("r").get<int>();
    s[id] = a.at("s").get<int>();
    inv[id] = a.at("inv").get<int>();
  }
  std::vector<int> table(static_cast<size_t>(n) * n, -1);
  for (const auto& row : j.at("compose")) {
    if (row.size() != 3)
      throw std::invalid_argument("groupoid json: compose rows are triples");
    int x = row[0].get<int>(), y = row[1].get<int>(), z = row[2].get<int>();
    if (x < 0 || x >= n || y < 0 || y >= n || z < 0 || z >= n)
      throw std::invalid_argument("groupoid json: compose out of range");
    table[static_cast<size_t>(x) * n + y] = z;
  }
  std::string name = j.value("name", std::string("json"));
  auto g = std::make_shared<const Groupoid>(nu, std::move(r), std::move(s),
                                            std::move(inv), std::move(table),
                                            name);
  auto rep = g->validate();
  if (!rep.ok())
    throw std::invalid_argument("groupoid json failed validation:\n" +
                                rep.str());
  return g;
}

namespace {

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json values_to_json(const Vec& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

}  // namespace

Json gfunction_to_json(const GFunction& f) {
  Json j;
  j["groupoid"] = f.gpd->name().empty() ? f.gpd->digest() : f.gpd->name();
  j["values"] = values_to_json(f.v);
  return j;
}

Json dfunction_to_json(const DFunction& f) {
  Json j;
  j["groupoid"] = f.gpd->name().empty() ? f.gpd->digest() : f.gpd->name();
  j["values"] = values_to_json(f.v);
  return j;
}

GFunction gfunction_from_json(const Json& j, const GroupoidPtr& g) {
  const auto& tag = j.at("groupoid").get<std::string>();
  if (tag != g->name() && tag != g->digest())
    throw std::invalid_argument("function json targets groupoid '" + tag +
                                "', expected '" + g->name() + "' or its digest");
  const auto& vals = j.at("values");
  if (static_cast<int>(vals.size()) != g->size())
    throw std::invalid_argument("function json: wrong number of values");
  GFunction f(g);
  for (int i = 0; i < g->size(); ++i) f.v(i) = complex_from_json(vals[i]);
  return f;
}

Json complex_matrix_to_json(const Mat& m) {
  Json j;
  j["rows"] = static_cast<int>(m.rows());
  j["cols"] = static_cast<int>(m.cols());
  Json data = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) data.push_back(complex_to_json(m(i, k)));
  j["data"] = data;
  return j;
}

Mat complex_matrix_from_json(const Json& j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  const auto& data = j.at("data");
  if (static_cast<int>(data.size()) != rows * cols)
    throw std::invalid_argument("matrix json: data length mismatch");
  Mat m(rows, cols);
  int idx = 0;
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = complex_from_json(data[idx++]);
  return m;
}

Json bundle_to_json(const HilbertBundle& b) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["groupoid"] = b.gpd->name().empty() ? b.gpd->digest() : b.gpd->name();
  j["dims"] = b.dims;
  Json iso = Json::array();
  for (const auto& m : b.iso) iso.push_back(complex_matrix_to_json(m));
  j["iso"] = iso;
  return j;
}

HilbertBundle bundle_from_json(const Json& j, const GroupoidPtr& g) {
  HilbertBundle b;
  b.gpd = g;
  b.dims = j.at("dims").get<std::vector<int>>();
  if (static_cast<int>(b.dims.size()) != g->units())
    throw std::invalid_argument("bundle json: one dim per unit required");
  const auto& iso = j.at("iso");
  if (static_cast<int>(iso.size()) != g->size())
    throw std::invalid_argument("bundle json: one matrix per arrow required");
  for (const auto& m : iso) b.iso.push_back(complex_matrix_from_json(m));
  auto rep = validate_bundle(b);
  if (!rep.ok())
    throw std::invalid_argument("bundle json failed validation:\n" + rep.str());
  return b;
}

Json norm_report(const NormInterval& iv) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["lower"] = iv.lower;
  j["upper"] = iv.upper;
  j["certificate"] = iv.certificate;
  return j;
}

Json duality_report(const DualityReport& rep) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["bisections"] = rep.n_bisections;
  j["mult_module_maps"] = rep.n_maps;
  Json pairs = Json::array();
  for (const auto& [bi, mi] : rep.pairing) pairs.push_back({bi, mi});
  j["bijection"] = pairs;
  j["is_bijection"] = rep.bijection;
  j["hypothesis_every_arrow_covered"] = rep.every_arrow_covered;
  if (!rep.uncovered.empty()) j["uncovered"] = rep.uncovered;
  j["complete"] = rep.complete;
  return j;
}

Json vn_dims_report(const VnDims& d) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["b_e2"] = d.b_e2;
  j["module"] = d.module;
  j["vn"] = d.vn;
  j["cred"] = d.cred;
  j["intersection"] = d.intersection;
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace gha
