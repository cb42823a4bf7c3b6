#include "gha/linalg.hpp"

#include <cmath>

namespace gha {

using Eigen::MatrixXcd;

double spectral_norm(const MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  MatrixXcd g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double min_eig_hermitian(const MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double hermitian_defect(const MatrixXcd& m) {
  return 0.5 * (m - m.adjoint()).cwiseAbs().maxCoeff();
}

MatrixXcd psd_project(const MatrixXcd& m) {
  MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd nullspace(const MatrixXcd& m, double rtol) {
  Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = sv.size() ? sv(0) * rtol : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

MatrixXcd column_span(const MatrixXcd& m, double rtol) {
  Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double cut = sv.size() ? sv(0) * rtol : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

MatrixXcd subspace_intersection(const MatrixXcd& a, const MatrixXcd& b,
                                double rtol) {
  if (a.cols() == 0 || b.cols() == 0) return MatrixXcd(a.rows(), 0);
  MatrixXcd stacked(a.rows(), a.cols() + b.cols());
  stacked << a, -b;
  MatrixXcd ns = nullspace(stacked, rtol);
  if (ns.cols() == 0) return MatrixXcd(a.rows(), 0);
  MatrixXcd inter = a * ns.topRows(a.cols());
  return column_span(inter, rtol);
}

uint64_t Rng::next() {
  // splitmix64
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::gauss() {
  if (have_spare) {
    have_spare = false;
    return spare;
  }
  double u1 = 0.0;
  while (u1 <= 1e-300) u1 = uniform();
  double u2 = uniform();
  double rad = std::sqrt(-2.0 * std::log(u1));
  double ang = 2.0 * M_PI * u2;
  spare = rad * std::sin(ang);
  have_spare = true;
  return rad * std::cos(ang);
}

std::complex<double> Rng::cgauss() {
  double re = gauss(), im = gauss();
  return {M_SQRT1_2 * re, M_SQRT1_2 * im};
}

int Rng::pick(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }

Eigen::VectorXcd Rng::cgauss_vec(int n) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cgauss();
  return v;
}

MatrixXcd Rng::unitary(int n) {
  MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cgauss();
  Eigen::HouseholderQR<MatrixXcd> qr(a);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(n, n);
  MatrixXcd rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    std::complex<double> d = rm(i, i);
    double ad = std::abs(d);
    q.col(i) *= ad > 0 ? d / ad : 1.0;
  }
  return q;
}

}  // namespace gha
