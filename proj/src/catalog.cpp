#include "gha/catalog.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace gha {

std::vector<std::vector<int>> cyclic_table(int k) {
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t[a][b] = (a + b) % k;
  return t;
}

std::vector<std::vector<int>> sym3_table() {
  // permutations of {0,1,2} listed with the identity first
  const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2},
                                                    {1, 2, 0},
                                                    {2, 0, 1},
                                                    {0, 2, 1},
                                                    {2, 1, 0},
                                                    {1, 0, 2}}};
  auto find = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    throw std::logic_error("sym3_table: lookup failed");
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c;
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = find(c);
    }
  return t;
}

std::vector<std::string> catalog_names() {
  return {"pair:2",   "pair:3",   "pair:4",      "cyclic:2",
          "cyclic:3", "sym:3",    "bundle:z2z3", "action:swap"};
}

GroupoidPtr catalog(const std::string& name) {
  if (name == "pair:2") return pair_groupoid(2);
  if (name == "pair:3") return pair_groupoid(3);
  if (name == "pair:4") return pair_groupoid(4);
  if (name == "cyclic:2") return group_groupoid(cyclic_table(2), "cyclic:2");
  if (name == "cyclic:3") return group_groupoid(cyclic_table(3), "cyclic:3");
  if (name == "sym:3") return group_groupoid(sym3_table(), "sym:3");
  if (name == "bundle:z2z3")
    return group_bundle({cyclic_table(2), cyclic_table(3)}, "bundle:z2z3");
  if (name == "action:swap") {
    // Z/2 acting on four points, swapping 0 and 1, fixing 2 and 3
    std::vector<std::vector<int>> act = {{0, 1}, {1, 0}, {2, 2}, {3, 3}};
    return action_groupoid(4, cyclic_table(2), act, "action:swap");
  }
  throw std::invalid_argument("unknown catalog groupoid: " + name);
}

}  // namespace gha
