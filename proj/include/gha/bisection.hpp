#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gha/cfun.hpp"

namespace gha {

// full bisection: a transversal hitting every r-fiber and every s-fiber once
struct Bisection {
  std::vector<int> by_r;  // by_r[u] = the arrow with range u
  std::vector<int> by_s;  // by_s[u] = the arrow with source u
};

struct EnumerationResult {
  std::vector<Bisection> items;
  bool complete = true;  // false when the search bound tripped
  long long explored = 0;
};

EnumerationResult enumerate_bisections(const GroupoidPtr& g,
                                       long long cap = 1000000);

Bisection identity_bisection(const GroupoidPtr& g);
// (ab)^u = a^u b^{s(a^u)}
Bisection mul(const GroupoidPtr& g, const Bisection& a, const Bisection& b);
Bisection inverse(const GroupoidPtr& g, const Bisection& a);
bool is_valid_bisection(const GroupoidPtr& g, const Bisection& a);

// left: (a f)(x) = f(x a^{s(x)}); right: (f a)(x) = f(a_{r(x)} x)
GFunction bisection_act(const Bisection& a, const GFunction& f, Side side);

// multiplicative D-bimodule functional recorded by its matrix on point
// masses, a(u, x) = alpha(delta_x)(u); when the axioms hold each row is a
// 0/1 row with a single 1, kept in selection[u]
struct MultModuleMap {
  GroupoidPtr gpd;
  Mat a;
  std::vector<int> selection;  // selection[u] = x with alpha(delta_x)(u) = 1
  std::vector<int> j;          // j[u] = s(selection[u])
};

MultModuleMap from_bisection(const GroupoidPtr& g, const Bisection& b);

struct CheckResult {
  bool ok;
  std::string reason;
};
// axioms for a multiplicative bimodule functional, checked on point masses
CheckResult check_mult_module_functional(const MultModuleMap& m);

struct MapEnumerationResult {
  std::vector<MultModuleMap> items;
  bool complete = true;
  long long explored = 0;
};
// scans every selection tuple x_u in G^u and keeps the ones passing the
// functional axioms; independent of the bisection enumeration
MapEnumerationResult enumerate_mult_module_maps(const GroupoidPtr& g,
                                                long long cap = 1000000);

struct DualityReport {
  long long n_bisections = 0;
  long long n_maps = 0;
  bool bijection = false;
  // pairing[i] = {bisection index, matching map index}
  std::vector<std::pair<long long, long long>> pairing;
  bool every_arrow_covered = false;
  std::vector<int> uncovered;
  bool complete = true;
};
DualityReport verify_duality(const GroupoidPtr& g, long long cap = 1000000);

}  // namespace gha
