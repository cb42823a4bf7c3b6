#pragma once

#include <Eigen/Dense>
#include <complex>

#include "gha/groupoid.hpp"

namespace gha {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// element of Cc(G), one value per arrow
struct GFunction {
  GroupoidPtr gpd;
  Vec v;

  GFunction() = default;
  explicit GFunction(GroupoidPtr g) : gpd(std::move(g)) {
    v = Vec::Zero(gpd->size());
  }
  GFunction(GroupoidPtr g, Vec values);
  Complex operator()(int x) const { return v(x); }
};

// element of D = C(G^0), one value per unit
struct DFunction {
  GroupoidPtr gpd;
  Vec v;

  DFunction() = default;
  explicit DFunction(GroupoidPtr g) : gpd(std::move(g)) {
    v = Vec::Zero(gpd->units());
  }
  DFunction(GroupoidPtr g, Vec values);
  Complex operator()(int u) const { return v(u); }
};

void check_same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);

GFunction delta(const GroupoidPtr& g, int x);
// characteristic function of the unit space, the convolution identity
GFunction unit_indicator(const GroupoidPtr& g);

// (f*g)(x) = sum over t in G^{r(x)} of f(t) g(t^{-1}x)
GFunction convolve(const GFunction& f, const GFunction& g);
// f*(x) = conj(f(x^{-1}))
GFunction involution(const GFunction& f);
// f^vee(x) = f(x^{-1})
GFunction vee(const GFunction& f);
GFunction conjugate(const GFunction& f);

struct INorms {
  double i_r, i_s, i;  // sup of fiberwise l1 sums over G^u, G_u, and their max
};
INorms i_norms(const GFunction& f);

enum class Side { left, right };
// left: (b f)(x) = b(s(x)) f(x); right: (f b)(x) = f(x) b(r(x))
GFunction module_act(const DFunction& b, const GFunction& f, Side side);

// <xi, eta>(u) = sum over G^u of conj(xi) eta; conjugate-linear first slot
DFunction e2_inner(const GFunction& xi, const GFunction& eta);
// max_u l2 norm of the restriction to G^u
double e2_norm(const GFunction& xi);

DFunction restrict_units(const GFunction& f);
GFunction extend_units(const DFunction& b);

// matrix of f -> f*F on l2(G^u): M[x,t] = F(t^{-1}x)
Mat right_fiber_matrix(const GFunction& F, int u);
// same operator on all of l2(G), block diagonal over r-fibers
Mat right_matrix(const GFunction& F);
// matrix of f -> F*f on l2(G)
Mat left_matrix(const GFunction& F);
// regular representation on l2(G_u): [x,y] = F(x y^{-1})
Mat pi_u_matrix(const GFunction& F, int u);

// sup over units of the spectral norm of right_fiber_matrix
double reduced_norm(const GFunction& F);
double sup_norm(const GFunction& f);
double l1_total(const GFunction& f);

}  // namespace gha
