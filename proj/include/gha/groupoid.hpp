#pragma once

#include <memory>
#include <string>
#include <vector>

namespace gha {

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

class Groupoid;
using GroupoidPtr = std::shared_ptr<const Groupoid>;

// Finite groupoid with dense arrow ids. Unit arrows occupy the id range
// [0, units()) and double as the unit space, so a unit u is both an arrow id
// and the index used by fiber lookups.
class Groupoid {
public:
  Groupoid(int n_units, std::vector<int> r, std::vector<int> s,
           std::vector<int> inv, std::vector<int> compose_table,
           std::string name);

  int size() const { return static_cast<int>(r_.size()); }
  int units() const { return n_units_; }
  bool is_unit(int x) const { return x >= 0 && x < n_units_; }

  int r(int x) const { return r_[x]; }
  int s(int x) const { return s_[x]; }
  int inv(int x) const { return inv_[x]; }

  bool composable(int x, int y) const { return s_[x] == r_[y]; }
  // partial product; -1 when s(x) != r(y)
  int compose(int x, int y) const { return table_[x * size() + y]; }

  // G^u = r^{-1}(u) and G_u = s^{-1}(u), ordered by arrow id
  const std::vector<int>& r_fiber(int u) const { return r_fibers_[u]; }
  const std::vector<int>& s_fiber(int u) const { return s_fibers_[u]; }
  // position of x within r_fiber(r(x)) resp. s_fiber(s(x))
  int r_index(int x) const { return r_index_[x]; }
  int s_index(int x) const { return s_index_[x]; }
  int max_r_fiber() const;

  // orbit partition of the unit space under u ~ s(x), r(x)
  std::vector<int> orbit_of_unit() const;
  // arrows with r = s = u
  std::vector<int> isotropy(int u) const;

  const std::string& name() const { return name_; }
  // structural hash over (units, r, s, inv, compose); stable across runs
  std::string digest() const;

  // checks every groupoid axiom and lists violations with witness arrows
  ValidationReport validate() const;

private:
  int n_units_;
  std::vector<int> r_, s_, inv_;
  std::vector<int> table_;
  std::vector<std::vector<int>> r_fibers_, s_fibers_;
  std::vector<int> r_index_, s_index_;
  std::string name_;
};

// pair groupoid on n points: arrows (i,j), (i,j)(j,k) = (i,k)
GroupoidPtr pair_groupoid(int n);

// single group from a Cayley table; table[g][h] = gh, identity must be 0
GroupoidPtr group_groupoid(const std::vector<std::vector<int>>& table,
                           const std::string& name);

// disjoint union of groups sitting over one unit each
GroupoidPtr group_bundle(const std::vector<std::vector<std::vector<int>>>& tables,
                         const std::string& name);

// transformation groupoid for a right action of a group on points:
// arrows (p, g) with r = p, s = p.g, (p,g)(p.g, h) = (p, gh)
GroupoidPtr action_groupoid(int n_points,
                            const std::vector<std::vector<int>>& group_table,
                            const std::vector<std::vector<int>>& act,
                            const std::string& name);

// same arrows with r and s exchanged and reversed composition
GroupoidPtr reverse(const GroupoidPtr& g);

// G x I2 where I2 is the pair groupoid on {0,1}
struct ProductI2 {
  GroupoidPtr gpd;
  GroupoidPtr base_gpd;
  // arrow id of (x, i, j) in gpd
  int arrow(int x, int i, int j) const { return index_[(x * 2 + i) * 2 + j]; }
  // inverse lookup: base arrow and pair indices of a product arrow
  int base(int w) const { return base_[w]; }
  int left(int w) const { return li_[w]; }
  int right(int w) const { return ri_[w]; }

  std::vector<int> index_, base_, li_, ri_;
};
ProductI2 product_with_i2(const GroupoidPtr& g);

}  // namespace gha
