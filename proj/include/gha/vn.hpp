#pragma once

#include <cstdint>

#include "gha/cfun.hpp"
#include "gha/linalg.hpp"

namespace gha {

// linear operator on E2 = l2(G) in the arrow basis
struct ModuleOperator {
  GroupoidPtr gpd;
  Mat m;
};

// block diagonal with respect to the r-fiber decomposition; at finite scale
// this is exactly the adjointable D-module condition
bool is_fiber_diagonal(const ModuleOperator& t, double tol = 1e-12);

ModuleOperator left_operator(const GFunction& f);
ModuleOperator right_operator(const GFunction& f);

// orthonormal basis of the commutant of all right convolutions
std::vector<ModuleOperator> commutant_of_right(const GroupoidPtr& g,
                                               double rtol = 1e-9);
// orthonormal basis of span{ right convolutions }
std::vector<ModuleOperator> cred_span(const GroupoidPtr& g, double rtol = 1e-9);

struct VnDims {
  int b_e2, module, vn, cred, intersection;
};
VnDims vn_dims(const GroupoidPtr& g);

// functional A(G) -> D stored through its values on point masses:
// a(u, x) = alpha(delta_x)(u)
struct ModuleFunctional {
  GroupoidPtr gpd;
  Mat a;
  DFunction apply(const GFunction& phi) const;
};

// alpha_T(phi) = conj(T(phi*)) restricted to units; requires T in the
// commutant within tol
ModuleFunctional alpha_from_operator(const ModuleOperator& t, double tol = 1e-8);
// inverse direction: T = L_F with F(z) = conj(a(r(z), z)); reports the
// residual of the defining identity when alpha is inconsistent
ModuleOperator operator_from_alpha(const ModuleFunctional& alpha,
                                   double* residual = nullptr);

struct OpNormBounds {
  double lower, upper;
  bool exact;  // fiber diagonal case
};
// operator norm on E2 with fiberwise sup norms; ascent lower bound and a
// row-block upper bound, exact for fiber diagonal operators
OpNormBounds operator_norm_e2(const ModuleOperator& t, uint64_t seed = 0,
                              double extra_upper_cap = -1.0);

struct IsometryReport {
  OpNormBounds op;
  double functional_lower;  // sup |alpha(phi)| over certified unit-ball phi
  double gap;               // op.upper - functional_lower
  bool consistent;          // functional_lower <= op.upper + tol
};
IsometryReport isometry_check(const ModuleOperator& t, int samples = 10,
                              uint64_t seed = 0, double tol = 1e-8);

// R on C(G^0) commuting with multiplication is itself a multiplication;
// off diagonal mass beyond tol raises with the witness entry
DFunction support_multiplier_extract(const GroupoidPtr& g, const Mat& r,
                                     double tol = 1e-12);

}  // namespace gha
