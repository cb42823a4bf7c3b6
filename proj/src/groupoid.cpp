#include "gha/groupoid.hpp"

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gha {

std::string ValidationReport::str() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

Groupoid::Groupoid(int n_units, std::vector<int> r, std::vector<int> s,
                   std::vector<int> inv, std::vector<int> compose_table,
                   std::string name)
    : n_units_(n_units),
      r_(std::move(r)),
      s_(std::move(s)),
      inv_(std::move(inv)),
      table_(std::move(compose_table)),
      name_(std::move(name)) {
  const int n = size();
  if (n_units_ < 0 || n_units_ > n)
    throw std::invalid_argument("groupoid: unit count out of range");
  if (static_cast<int>(s_.size()) != n || static_cast<int>(inv_.size()) != n)
    throw std::invalid_argument("groupoid: map sizes disagree");
  if (static_cast<int>(table_.size()) != n * n)
    throw std::invalid_argument("groupoid: compose table must be |G| x |G|");
  for (int x = 0; x < n; ++x) {
    if (r_[x] < 0 || r_[x] >= n || s_[x] < 0 || s_[x] >= n || inv_[x] < 0 ||
        inv_[x] >= n)
      throw std::invalid_argument("groupoid: arrow map entry out of range");
  }
  for (int v : table_)
    if (v < -1 || v >= n)
      throw std::invalid_argument("groupoid: compose entry out of range");

  r_fibers_.resize(n_units_);
  s_fibers_.resize(n_units_);
  r_index_.assign(n, -1);
  s_index_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (r_[x] < n_units_) {
      r_index_[x] = static_cast<int>(r_fibers_[r_[x]].size());
      r_fibers_[r_[x]].push_back(x);
    }
    if (s_[x] < n_units_) {
      s_index_[x] = static_cast<int>(s_fibers_[s_[x]].size());
      s_fibers_[s_[x]].push_back(x);
    }
  }
}

int Groupoid::max_r_fiber() const {
  int m = 0;
  for (const auto& f : r_fibers_) m = std::max(m, static_cast<int>(f.size()));
  return m;
}

std::vector<int> Groupoid::orbit_of_unit() const {
  std::vector<int> rep(n_units_);
  for (int u = 0; u < n_units_; ++u) rep[u] = u;
  // union-find over s(x) ~ r(x)
  std::vector<int> parent = rep;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int x = 0; x < size(); ++x) {
    if (r_[x] >= n_units_ || s_[x] >= n_units_) continue;
    int a = find(r_[x]), b = find(s_[x]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  for (int u = 0; u < n_units_; ++u) rep[u] = find(u);
  return rep;
}

std::vector<int> Groupoid::isotropy(int u) const {
  std::vector<int> iso;
  for (int x : r_fibers_[u])
    if (s_[x] == u) iso.push_back(x);
  return iso;
}

std::string Groupoid::digest() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](int v) {
    for (int k = 0; k < 4; ++k) {
      h ^= static_cast<uint64_t>((v >> (8 * k)) & 0xff);
      h *= 1099511628211ull;
    }
  };
  mix(n_units_);
  mix(size());
  for (int v : r_) mix(v);
  for (int v : s_) mix(v);
  for (int v : inv_) mix(v);
  for (int v : table_) mix(v);
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

ValidationReport Groupoid::validate() const {
  ValidationReport rep;
  const int n = size();
  const size_t cap = 64;
  auto add = [&](const std::string& m) {
    if (rep.violations.size() < cap) rep.violations.push_back(m);
  };
  auto arrow = [](int x) { return std::to_string(x); };

  for (int u = 0; u < n_units_; ++u) {
    if (r_[u] != u || s_[u] != u)
      add("unit " + arrow(u) + " has r or s off itself");
    if (inv_[u] != u) add("unit " + arrow(u) + " is not self-inverse");
  }
  for (int x = 0; x < n; ++x) {
    if (r_[x] >= n_units_) add("r(" + arrow(x) + ") is not a unit");
    if (s_[x] >= n_units_) add("s(" + arrow(x) + ") is not a unit");
    if (inv_[inv_[x]] != x) add("inv not involutive at " + arrow(x));
    if (r_[inv_[x]] != s_[x] || s_[inv_[x]] != r_[x])
      add("inv swaps r and s incorrectly at " + arrow(x));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int z = table_[x * n + y];
      bool dom = s_[x] == r_[y];
      if (dom && z == -1)
        add("compose undefined on composable (" + arrow(x) + "," + arrow(y) + ")");
      if (!dom && z != -1)
        add("compose defined on non-composable (" + arrow(x) + "," + arrow(y) + ")");
      if (dom && z != -1 && (r_[z] != r_[x] || s_[z] != s_[y]))
        add("compose breaks r/s at (" + arrow(x) + "," + arrow(y) + ")");
    }
  for (int x = 0; x < n; ++x) {
    if (r_[x] < n_units_ && table_[r_[x] * n + x] != x)
      add("left identity fails at " + arrow(x));
    if (s_[x] < n_units_ && table_[x * n + s_[x]] != x)
      add("right identity fails at " + arrow(x));
    if (table_[x * n + inv_[x]] != r_[x])
      add("x inv(x) != r(x) at " + arrow(x));
    if (table_[inv_[x] * n + x] != s_[x])
      add("inv(x) x != s(x) at " + arrow(x));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (s_[x] != r_[y]) continue;
      int xy = table_[x * n + y];
      if (xy == -1) continue;
      for (int z = 0; z < n; ++z) {
        if (s_[y] != r_[z]) continue;
        int yz = table_[y * n + z];
        if (yz == -1) continue;
        if (table_[xy * n + z] != table_[x * n + yz])
          add("associativity fails at (" + arrow(x) + "," + arrow(y) + "," +
              arrow(z) + ")");
      }
    }
  if (rep.violations.size() == cap) rep.violations.push_back("...");
  return rep;
}

GroupoidPtr pair_groupoid(int n) {
  if (n < 1) throw std::invalid_argument("pair_groupoid: n must be positive");
  const int N = n * n;
  std::vector<int> id(N, -1);
  auto key = [n](int i, int j) { return i * n + j; };
  std::vector<int> r, s, inv;
  std::vector<std::pair<int, int>> of;
  auto add = [&](int i, int j) {
    id[key(i, j)] = static_cast<int>(of.size());
    of.emplace_back(i, j);
    r.push_back(i);
    s.push_back(j);
  };
  for (int i = 0; i < n; ++i) add(i, i);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) add(i, j);
  inv.resize(N);
  for (int x = 0; x < N; ++x) inv[x] = id[key(of[x].second, of[x].first)];
  std::vector<int> table(N * N, -1);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      if (of[x].second == of[y].first)
        table[x * N + y] = id[key(of[x].first, of[y].second)];
  return std::make_shared<Groupoid>(n, r, s, inv, table,
                                    "pair:" + std::to_string(n));
}

namespace {

void check_group_table(const std::vector<std::vector<int>>& t,
                       const std::string& what) {
  const int k = static_cast<int>(t.size());
  if (k == 0) throw std::invalid_argument(what + ": empty table");
  for (const auto& row : t)
    if (static_cast<int>(row.size()) != k)
      throw std::invalid_argument(what + ": table not square");
  for (const auto& row : t)
    for (int v : row)
      if (v < 0 || v >= k)
        throw std::invalid_argument(what + ": entry out of range");
  for (int g = 0; g < k; ++g)
    if (t[0][g] != g || t[g][0] != g)
      throw std::invalid_argument(what + ": 0 is not an identity");
  for (int g = 0; g < k; ++g) {
    bool has_inv = false;
    for (int h = 0; h < k; ++h) has_inv |= t[g][h] == 0 && t[h][g] == 0;
    if (!has_inv) throw std::invalid_argument(what + ": missing inverse");
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]])
          throw std::invalid_argument(what + ": not associative");
}

int group_inverse(const std::vector<std::vector<int>>& t, int g) {
  for (int h = 0; h < static_cast<int>(t.size()); ++h)
    if (t[g][h] == 0) return h;
  return -1;
}

}  // namespace

GroupoidPtr group_groupoid(const std::vector<std::vector<int>>& table,
                           const std::string& name) {
  return group_bundle({table}, name);
}

GroupoidPtr group_bundle(const std::vector<std::vector<std::vector<int>>>& tables,
                         const std::string& name) {
  const int F = static_cast<int>(tables.size());
  if (F == 0) throw std::invalid_argument("group_bundle: no fibers");
  for (int f = 0; f < F; ++f)
    check_group_table(tables[f], "group_bundle fiber " + std::to_string(f));

  // ids: units 0..F-1, then non-identity elements fiber by fiber
  std::vector<std::vector<int>> id(F);
  std::vector<int> fib, elt, r, s;
  for (int f = 0; f < F; ++f) {
    id[f].assign(tables[f].size(), -1);
    id[f][0] = f;
  }
  for (int f = 0; f < F; ++f) {
    fib.push_back(f);
    elt.push_back(0);
    r.push_back(f);
    s.push_back(f);
  }
  for (int f = 0; f < F; ++f)
    for (int g = 1; g < static_cast<int>(tables[f].size()); ++g) {
      id[f][g] = static_cast<int>(fib.size());
      fib.push_back(f);
      elt.push_back(g);
      r.push_back(f);
      s.push_back(f);
    }
  const int N = static_cast<int>(fib.size());
  std::vector<int> inv(N), table(N * N, -1);
  for (int x = 0; x < N; ++x)
    inv[x] = id[fib[x]][group_inverse(tables[fib[x]], elt[x])];
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      if (fib[x] == fib[y]) table[x * N + y] = id[fib[x]][tables[fib[x]][elt[x]][elt[y]]];
  return std::make_shared<Groupoid>(F, r, s, inv, table, name);
}

GroupoidPtr action_groupoid(int n_points,
                            const std::vector<std::vector<int>>& group_table,
                            const std::vector<std::vector<int>>& act,
                            const std::string& name) {
  check_group_table(group_table, "action_groupoid group");
  const int k = static_cast<int>(group_table.size());
  if (static_cast<int>(act.size()) != n_points)
    throw std::invalid_argument("action_groupoid: act must have one row per point");
  for (const auto& row : act) {
    if (static_cast<int>(row.size()) != k)
      throw std::invalid_argument("action_groupoid: act row size != group order");
    for (int v : row)
      if (v < 0 || v >= n_points)
        throw std::invalid_argument("action_groupoid: act entry out of range");
  }
  for (int p = 0; p < n_points; ++p) {
    if (act[p][0] != p)
      throw std::invalid_argument("action_groupoid: identity must act trivially");
    for (int g = 0; g < k; ++g)
      for (int h = 0; h < k; ++h)
        if (act[act[p][g]][h] != act[p][group_table[g][h]])
          throw std::invalid_argument("action_groupoid: not an action");
  }

  // ids: units (p, 0) first, then (p, g) for g != 0
  std::vector<int> pt, el, r, s;
  std::vector<std::vector<int>> id(n_points, std::vector<int>(k, -1));
  for (int p = 0; p < n_points; ++p) {
    id[p][0] = p;
    pt.push_back(p);
    el.push_back(0);
    r.push_back(p);
    s.push_back(p);
  }
  for (int p = 0; p < n_points; ++p)
    for (int g = 1; g < k; ++g) {
      id[p][g] = static_cast<int>(pt.size());
      pt.push_back(p);
      el.push_back(g);
      r.push_back(p);
      s.push_back(act[p][g]);
    }
  const int N = static_cast<int>(pt.size());
  std::vector<int> inv(N), table(N * N, -1);
  for (int x = 0; x < N; ++x)
    inv[x] = id[act[pt[x]][el[x]]][group_inverse(group_table, el[x])];
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      if (s[x] == r[y]) table[x * N + y] = id[pt[x]][group_table[el[x]][el[y]]];
  return std::make_shared<Groupoid>(n_points, r, s, inv, table, name);
}

GroupoidPtr reverse(const GroupoidPtr& g) {
  const int N = g->size();
  std::vector<int> r(N), s(N), inv(N), table(N * N, -1);
  for (int x = 0; x < N; ++x) {
    r[x] = g->s(x);
    s[x] = g->r(x);
    inv[x] = g->inv(x);
  }
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) table[x * N + y] = g->compose(y, x);
  return std::make_shared<Groupoid>(g->units(), r, s, inv, table,
                                    g->name() + ":rev");
}

ProductI2 product_with_i2(const GroupoidPtr& g) {
  const int N = g->size(), nu = g->units();
  ProductI2 out;
  out.index_.assign(4 * N, -1);
  auto slot = [](int x, int i, int j) { return (x * 2 + i) * 2 + j; };
  std::vector<int> r, s;
  auto add = [&](int x, int i, int j) {
    out.index_[slot(x, i, j)] = static_cast<int>(out.base_.size());
    out.base_.push_back(x);
    out.li_.push_back(i);
    out.ri_.push_back(j);
    r.push_back(i * nu + g->r(x));
    s.push_back(j * nu + g->s(x));
  };
  for (int i = 0; i < 2; ++i)
    for (int u = 0; u < nu; ++u) add(u, i, i);
  for (int x = 0; x < N; ++x)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (!(g->is_unit(x) && i == j)) add(x, i, j);
  const int M = static_cast<int>(out.base_.size());
  std::vector<int> inv(M), table(M * M, -1);
  for (int w = 0; w < M; ++w)
    inv[w] = out.index_[slot(g->inv(out.base_[w]), out.ri_[w], out.li_[w])];
  for (int w = 0; w < M; ++w)
    for (int v = 0; v < M; ++v) {
      if (out.ri_[w] != out.li_[v]) continue;
      int xy = g->compose(out.base_[w], out.base_[v]);
      if (xy != -1) table[w * M + v] = out.index_[slot(xy, out.li_[w], out.ri_[v])];
    }
  out.gpd = std::make_shared<Groupoid>(2 * nu, r, s, inv, table,
                                       g->name() + ":xI2");
  out.base_gpd = g;
  return out;
}

}  // namespace gha
