#pragma once

#include <vector>

#include "gha/cfun.hpp"
#include "gha/linalg.hpp"

namespace gha {

// unitary bundle over the unit space: one fiber per unit, one isometry
// L(x): H_{s(x)} -> H_{r(x)} per arrow, functorial in x
struct HilbertBundle {
  GroupoidPtr gpd;
  std::vector<int> dims;       // per unit
  std::vector<Mat> iso;        // per arrow, dims[r(x)] x dims[s(x)]
};

// one vector per unit fiber
struct BundleSection {
  std::vector<Vec> at;
};

ValidationReport validate_bundle(const HilbertBundle& b, double tol = 1e-8);

struct PdReport {
  bool pd = false;
  Eigen::VectorXd min_eigs;  // per unit, of the fiber Gram matrix
  int witness_unit = -1;     // first unit violating PSD, -1 if none
};
// fiber matrix P[i][j] = phi(x_i^{-1} x_j) over G^u must be PSD for every u
PdReport is_positive_definite(const GFunction& phi, double tol = 1e-9);
Mat pd_fiber_matrix(const GFunction& phi, int u);

// (xi,eta)(x) = <L(x) xi(s(x)), eta(r(x))>, conjugate-linear first slot
GFunction coefficient(const HilbertBundle& b, const BundleSection& xi,
                      const BundleSection& eta);

struct GnsResult {
  HilbertBundle bundle;
  BundleSection cyclic;  // coefficient(bundle, cyclic, cyclic) == phi
};
// GNS bundle of a positive definite function; fiber ranks from the Gram
// matrices with relative eigenvalue cutoff 1e-9
GnsResult gns_bundle(const GFunction& phi, double rank_rtol = 1e-9);

// regular realization of a positive definite function: xi = T^{1/2} h with
// T the right convolution by phi and h the unit indicator over supp(phi);
// the e2 coefficient (xi, xi) recovers phi
GFunction pd_compact_to_regular(const GFunction& phi, double tol = 1e-8);

// coefficient of the I2-extension carrying (xi,eta) in the (0,1) block
struct OffDiagonal {
  ProductI2 prod;
  GFunction F;        // on prod.gpd
  GFunction block01;  // (xi,eta) read back off F, on the base groupoid
};
OffDiagonal off_diagonalize(const HilbertBundle& b, const BundleSection& xi,
                            const BundleSection& eta);

struct FromOffDiagonal {
  HilbertBundle bundle;
  BundleSection xi, eta;
  GFunction phi;  // equals 2 * coefficient(eta, xi) = block (0,1) of F
};
// inverse direction: cut a positive definite F on G x I2 down by the
// projection P_u = L'(u) and read off the pair realizing its (0,1) block
FromOffDiagonal from_off_diagonal(const ProductI2& prod, const GFunction& F,
                                  double tol = 1e-8);

// random data for tests and sampling: functorial bundle built from the
// regular representation of each orbit's isotropy group
HilbertBundle random_bundle(const GroupoidPtr& g, Rng& rng,
                            int max_extra_dim = 2);
BundleSection random_section(const HilbertBundle& b, Rng& rng);

}  // namespace gha
