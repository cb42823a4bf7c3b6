#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace gha {

double spectral_norm(const Eigen::MatrixXcd& m);
// smallest eigenvalue of the Hermitian part
double min_eig_hermitian(const Eigen::MatrixXcd& m);
// distance of m from its Hermitian part, max abs entry
double hermitian_defect(const Eigen::MatrixXcd& m);
// nearest PSD matrix to the Hermitian part (eigenvalue clipping)
Eigen::MatrixXcd psd_project(const Eigen::MatrixXcd& m);

// orthonormal basis of the nullspace, relative threshold on singular values
Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double rtol = 1e-9);
// orthonormal basis of the column span
Eigen::MatrixXcd column_span(const Eigen::MatrixXcd& m, double rtol = 1e-9);
// orthonormal basis of span(a) intersect span(b); a, b orthonormal columns
Eigen::MatrixXcd subspace_intersection(const Eigen::MatrixXcd& a,
                                       const Eigen::MatrixXcd& b,
                                       double rtol = 1e-9);

// deterministic stream of uniforms and gaussians from a fixed seed
struct Rng {
  explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  uint64_t next();
  double uniform();                 // [0, 1)
  double gauss();
  std::complex<double> cgauss();    // standard complex gaussian
  int pick(int n);                  // uniform in [0, n)

  Eigen::VectorXcd cgauss_vec(int n);
  Eigen::MatrixXcd unitary(int n);  // Haar-ish via QR of a gaussian matrix

  uint64_t state;
  bool have_spare = false;
  double spare = 0.0;
};

}  // namespace gha
