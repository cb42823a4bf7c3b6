#include "gha/bisection.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace gha {

EnumerationResult enumerate_bisections(const GroupoidPtr& g, long long cap) {
  const auto& G = *g;
  const int nu = G.units();
  EnumerationResult res;
  std::vector<int> pick(nu, -1);
  std::vector<char> s_used(nu, 0);
  std::function<bool(int)> go = [&](int u) -> bool {
    if (u == nu) {
      Bisection b;
      b.by_r = pick;
      b.by_s.assign(nu, -1);
      for (int w = 0; w < nu; ++w) b.by_s[G.s(pick[w])] = pick[w];
      res.items.push_back(std::move(b));
      return true;
    }
    for (int x : G.r_fiber(u)) {
      if (++res.explored > cap) return false;
      int v = G.s(x);
      if (s_used[v]) continue;
      s_used[v] = 1;
      pick[u] = x;
      bool within = go(u + 1);
      s_used[v] = 0;
      pick[u] = -1;
      if (!within) return false;
    }
    return true;
  };
  res.complete = go(0);
  return res;
}

Bisection identity_bisection(const GroupoidPtr& g) {
  Bisection b;
  b.by_r.resize(g->units());
  b.by_s.resize(g->units());
  for (int u = 0; u < g->units(); ++u) b.by_r[u] = b.by_s[u] = u;
  return b;
}

bool is_valid_bisection(const GroupoidPtr& g, const Bisection& a) {
  const auto& G = *g;
  const int nu = G.units();
  if (static_cast<int>(a.by_r.size()) != nu ||
      static_cast<int>(a.by_s.size()) != nu)
    return false;
  std::vector<char> hit(nu, 0);
  for (int u = 0; u < nu; ++u) {
    int x = a.by_r[u];
    if (x < 0 || x >= G.size() || G.r(x) != u) return false;
    if (hit[G.s(x)]) return false;
    hit[G.s(x)] = 1;
    if (a.by_s[G.s(x)] != x) return false;
  }
  return true;
}

Bisection mul(const GroupoidPtr& g, const Bisection& a, const Bisection& b) {
  const auto& G = *g;
  const int nu = G.units();
  Bisection c;
  c.by_r.resize(nu);
  c.by_s.assign(nu, -1);
  for (int u = 0; u < nu; ++u) {
    int au = a.by_r[u];
    c.by_r[u] = G.compose(au, b.by_r[G.s(au)]);
  }
  for (int u = 0; u < nu; ++u) c.by_s[G.s(c.by_r[u])] = c.by_r[u];
  return c;
}

Bisection inverse(const GroupoidPtr& g, const Bisection& a) {
  const auto& G = *g;
  const int nu = G.units();
  Bisection c;
  c.by_r.resize(nu);
  c.by_s.resize(nu);
  for (int u = 0; u < nu; ++u) {
    c.by_r[u] = G.inv(a.by_s[u]);
    c.by_s[u] = G.inv(a.by_r[u]);
  }
  return c;
}

GFunction bisection_act(const Bisection& a, const GFunction& f, Side side) {
  const auto& G = *f.gpd;
  GFunction out(f.gpd);
  for (int x = 0; x < G.size(); ++x) {
    if (side == Side::left)
      out.v(x) = f.v(G.compose(x, a.by_r[G.s(x)]));
    else
      out.v(x) = f.v(G.compose(a.by_s[G.r(x)], x));
  }
  return out;
}

MultModuleMap from_bisection(const GroupoidPtr& g, const Bisection& b) {
  const auto& G = *g;
  MultModuleMap m;
  m.gpd = g;
  m.a = Mat::Zero(G.units(), G.size());
  m.selection.resize(G.units());
  m.j.resize(G.units());
  for (int u = 0; u < G.units(); ++u) {
    int x = b.by_r[u];
    m.selection[u] = x;
    m.j[u] = G.s(x);
    m.a(u, x) = 1.0;
  }
  return m;
}

CheckResult check_mult_module_functional(const MultModuleMap& m) {
  const auto& G = *m.gpd;
  const int nu = G.units();
  const int n = G.size();
  const double tol = 1e-9;
  if (m.a.rows() != nu || m.a.cols() != n) return {false, "matrix shape"};

  // point masses are pointwise idempotents with pairwise zero products, so
  // every value alpha(delta_x)(u) is 0 or 1 and each row carries at most
  // one 1; the unit of the algebra pushes that to exactly one
  std::vector<int> sel(nu, -1);
  for (int u = 0; u < nu; ++u) {
    int count = 0;
    for (int x = 0; x < n; ++x) {
      Complex val = m.a(u, x);
      bool zero = std::abs(val) <= tol;
      bool one = std::abs(val - 1.0) <= tol;
      if (!zero && !one)
        return {false, "value at unit " + std::to_string(u) + ", arrow " +
                           std::to_string(x) + " is not 0 or 1"};
      if (one) {
        ++count;
        sel[u] = x;
      }
    }
    if (count != 1)
      return {false, "unit " + std::to_string(u) + " selects " +
                         std::to_string(count) + " arrows"};
  }

  // left module identity alpha(b phi) = b alpha(phi) pins r(sel[u]) = u
  for (int u = 0; u < nu; ++u)
    if (G.r(sel[u]) != u)
      return {false, "selection at unit " + std::to_string(u) +
                         " leaves its range fiber"};

  // the right action factors through b -> b o J; J must be invertible
  std::vector<int> hits(nu, 0);
  for (int u = 0; u < nu; ++u) hits[G.s(sel[u])]++;
  for (int v = 0; v < nu; ++v)
    if (hits[v] != 1)
      return {false,
              "induced unit map is not a bijection, source " +
                  std::to_string(v) + " hit " + std::to_string(hits[v]) +
                  " times"};

  // replay both module identities numerically on the delta basis
  for (int x = 0; x < n; ++x)
    for (int v = 0; v < nu; ++v)
      for (int u = 0; u < nu; ++u) {
        Complex left_lhs = (G.r(x) == v) ? m.a(u, x) : Complex(0.0);
        Complex left_rhs = (u == v) ? m.a(u, x) : Complex(0.0);
        if (std::abs(left_lhs - left_rhs) > tol)
          return {false, "left module identity fails"};
        Complex right_lhs = (G.s(x) == v) ? m.a(u, x) : Complex(0.0);
        Complex right_rhs = (G.s(sel[u]) == v) ? m.a(u, x) : Complex(0.0);
        if (std::abs(right_lhs - right_rhs) > tol)
          return {false, "right module identity fails"};
      }

  return {true, ""};
}

MapEnumerationResult enumerate_mult_module_maps(const GroupoidPtr& g,
                                                long long cap) {
  const auto& G = *g;
  const int nu = G.units();
  MapEnumerationResult res;
  long long total = 1;
  for (int u = 0; u < nu; ++u) {
    if (G.r_fiber(u).empty()) return res;
    total *= static_cast<long long>(G.r_fiber(u).size());
    if (total > cap) {
      res.complete = false;
      return res;
    }
  }
  std::vector<int> idx(nu, 0);
  while (true) {
    ++res.explored;
    MultModuleMap m;
    m.gpd = g;
    m.a = Mat::Zero(nu, G.size());
    m.selection.resize(nu);
    m.j.resize(nu);
    for (int u = 0; u < nu; ++u) {
      int x = G.r_fiber(u)[idx[u]];
      m.selection[u] = x;
      m.j[u] = G.s(x);
      m.a(u, x) = 1.0;
    }
    if (check_mult_module_functional(m).ok) res.items.push_back(std::move(m));
    int k = nu - 1;
    while (k >= 0 &&
           ++idx[k] == static_cast<int>(G.r_fiber(k).size()))
      idx[k--] = 0;
    if (k < 0) break;
  }
  return res;
}

DualityReport verify_duality(const GroupoidPtr& g, long long cap) {
  auto bis = enumerate_bisections(g, cap);
  auto maps = enumerate_mult_module_maps(g, cap);
  DualityReport rep;
  rep.complete = bis.complete && maps.complete;
  rep.n_bisections = static_cast<long long>(bis.items.size());
  rep.n_maps = static_cast<long long>(maps.items.size());

  std::map<std::vector<int>, long long> map_index;
  bool maps_distinct = true;
  for (size_t k = 0; k < maps.items.size(); ++k)
    if (!map_index.emplace(maps.items[k].selection, (long long)k).second)
      maps_distinct = false;
  std::vector<int> hit(maps.items.size(), 0);
  bool all_paired = true;
  for (size_t i = 0; i < bis.items.size(); ++i) {
    auto sel = from_bisection(g, bis.items[i]).selection;
    auto it = map_index.find(sel);
    if (it == map_index.end()) {
      all_paired = false;
      continue;
    }
    rep.pairing.emplace_back((long long)i, it->second);
    hit[it->second]++;
  }
  bool onto = true;
  for (int h : hit)
    if (h != 1) onto = false;
  rep.bijection = rep.complete && maps_distinct && all_paired && onto &&
                  bis.items.size() == maps.items.size();

  std::vector<char> covered(g->size(), 0);
  for (const auto& b : bis.items)
    for (int x : b.by_r) covered[x] = 1;
  for (int x = 0; x < g->size(); ++x)
    if (!covered[x]) rep.uncovered.push_back(x);
  rep.every_arrow_covered = rep.complete && rep.uncovered.empty();
  return rep;
}

}  // namespace gha
