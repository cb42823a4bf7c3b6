#include "gha/posdef.hpp"

#include <stdexcept>

namespace gha {

ValidationReport validate_bundle(const HilbertBundle& b, double tol) {
  ValidationReport rep;
  const auto& G = *b.gpd;
  auto add = [&](const std::string& m) {
    if (rep.violations.size() < 64) rep.violations.push_back(m);
  };
  if (static_cast<int>(b.dims.size()) != G.units() ||
      static_cast<int>(b.iso.size()) != G.size()) {
    rep.violations.push_back("bundle size mismatch");
    return rep;
  }
  for (int x = 0; x < G.size(); ++x) {
    if (b.iso[x].rows() != b.dims[G.r(x)] || b.iso[x].cols() != b.dims[G.s(x)])
      add("isometry shape wrong at arrow " + std::to_string(x));
  }
  if (!rep.ok()) return rep;
  for (int u = 0; u < G.units(); ++u)
    if ((b.iso[u] - Mat::Identity(b.dims[u], b.dims[u])).cwiseAbs().maxCoeff() > tol)
      add("L(u) != id at unit " + std::to_string(u));
  for (int x = 0; x < G.size(); ++x) {
    int d = b.dims[G.s(x)];
    if ((b.iso[x].adjoint() * b.iso[x] - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
      add("L(x) not unitary at arrow " + std::to_string(x));
    if ((b.iso[G.inv(x)] - b.iso[x].adjoint()).cwiseAbs().maxCoeff() > tol)
      add("L(inv x) != L(x)* at arrow " + std::to_string(x));
  }
  for (int x = 0; x < G.size(); ++x)
    for (int y : G.r_fiber(G.s(x))) {
      int xy = G.compose(x, y);
      if ((b.iso[xy] - b.iso[x] * b.iso[y]).cwiseAbs().maxCoeff() > tol)
        add("L(xy) != L(x)L(y) at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    }
  return rep;
}

Mat pd_fiber_matrix(const GFunction& phi, int u) {
  const auto& G = *phi.gpd;
  const auto& fib = G.r_fiber(u);
  const int d = static_cast<int>(fib.size());
  Mat p(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      p(i, j) = phi.v(G.compose(G.inv(fib[i]), fib[j]));
  return p;
}

PdReport is_positive_definite(const GFunction& phi, double tol) {
  const auto& G = *phi.gpd;
  PdReport rep;
  rep.min_eigs.resize(G.units());
  rep.pd = true;
  for (int u = 0; u < G.units(); ++u) {
    Mat p = pd_fiber_matrix(phi, u);
    double scale = 1.0 + (p.size() ? p.cwiseAbs().maxCoeff() : 0.0);
    rep.min_eigs(u) = min_eig_hermitian(p);
    if (rep.min_eigs(u) < -tol * scale || hermitian_defect(p) > tol * scale) {
      rep.pd = false;
      if (rep.witness_unit < 0) rep.witness_unit = u;
    }
  }
  return rep;
}

GFunction coefficient(const HilbertBundle& b, const BundleSection& xi,
                      const BundleSection& eta) {
  const auto& G = *b.gpd;
  GFunction out(b.gpd);
  for (int x = 0; x < G.size(); ++x)
    out.v(x) = (b.iso[x] * xi.at[G.s(x)]).dot(eta.at[G.r(x)]);
  return out;
}

GnsResult gns_bundle(const GFunction& phi, double rank_rtol) {
  PdReport pd = is_positive_definite(phi);
  if (!pd.pd)
    throw std::invalid_argument(
        "gns_bundle: input not positive definite, witness unit " +
        std::to_string(pd.witness_unit));
  const auto& G = *phi.gpd;
  GnsResult res;
  res.bundle.gpd = phi.gpd;
  res.bundle.dims.resize(G.units());
  res.bundle.iso.resize(G.size());
  res.cyclic.at.resize(G.units());

  // per unit: Gram K[x,y] = phi(y^{-1}x) on G^u, quotient map Q = D^{1/2} V*
  std::vector<Mat> Q(G.units()), Qpinv(G.units());
  for (int u = 0; u < G.units(); ++u) {
    Mat K = pd_fiber_matrix(phi, u).transpose().eval();
    K = 0.5 * (K + K.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(K);
    double top = es.eigenvalues().size() ? es.eigenvalues().maxCoeff() : 0.0;
    double cut = rank_rtol * std::max(1e-300, top);
    std::vector<int> keep;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > cut) keep.push_back(i);
    const int rank = static_cast<int>(keep.size());
    Mat V(K.rows(), rank);
    Eigen::VectorXd lam(rank);
    for (int i = 0; i < rank; ++i) {
      V.col(i) = es.eigenvectors().col(keep[i]);
      lam(i) = es.eigenvalues()(keep[i]);
    }
    Eigen::VectorXd root = lam.cwiseSqrt();
    Q[u] = root.asDiagonal() * V.adjoint();
    Qpinv[u] = V * root.cwiseInverse().asDiagonal();
    res.bundle.dims[u] = rank;
  }
  // action: left translation conjugated through the quotient maps
  for (int x = 0; x < G.size(); ++x) {
    int ru = G.r(x), su = G.s(x);
    const auto& rf = G.r_fiber(ru);
    Mat T = Mat::Zero(rf.size(), G.r_fiber(su).size());
    for (int t : rf) T(G.r_index(t), G.r_index(G.compose(G.inv(x), t))) = 1.0;
    res.bundle.iso[x] = Q[ru] * T * Qpinv[su];
  }
  for (int u = 0; u < G.units(); ++u)
    res.cyclic.at[u] = Q[u].col(G.r_index(u));
  return res;
}

GFunction pd_compact_to_regular(const GFunction& phi, double tol) {
  const auto& G = *phi.gpd;
  GFunction xi(phi.gpd);
  for (int u = 0; u < G.units(); ++u) {
    Mat m = right_fiber_matrix(phi, u);
    double scale = 1.0 + (m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
    if (min_eig_hermitian(m) < -tol * scale || hermitian_defect(m) > tol * scale)
      throw std::invalid_argument(
          "pd_compact_to_regular: fiber matrix at unit " + std::to_string(u) +
          " is not positive semidefinite");
    bool in_supp = false;
    for (int x = 0; x < G.size(); ++x)
      if (std::abs(phi.v(x)) > 0 && (G.r(x) == u || G.s(x) == u)) in_supp = true;
    if (!in_supp) continue;
    // xi restricted to G^u is sqrt(M_u) applied to the unit indicator
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Mat root = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
    Vec col = root.col(G.r_index(u));
    for (int x : G.r_fiber(u)) xi.v(x) = col(G.r_index(x));
  }
  return xi;
}

OffDiagonal off_diagonalize(const HilbertBundle& b, const BundleSection& xi,
                            const BundleSection& eta) {
  const auto& G = *b.gpd;
  OffDiagonal out;
  out.prod = product_with_i2(b.gpd);
  const auto& P = *out.prod.gpd;
  out.F = GFunction(out.prod.gpd);
  // section of the I2 extension: component 0 carries eta, component 1 xi,
  // which puts (xi,eta) in the (0,1) block
  auto comp = [&](int i, int u) -> const Vec& { return i == 0 ? eta.at[u] : xi.at[u]; };
  for (int w = 0; w < P.size(); ++w) {
    int x = out.prod.base(w), i = out.prod.left(w), j = out.prod.right(w);
    out.F.v(w) = (b.iso[x] * comp(j, G.s(x))).dot(comp(i, G.r(x)));
  }
  out.block01 = GFunction(b.gpd);
  for (int x = 0; x < G.size(); ++x) out.block01.v(x) = out.F.v(out.prod.arrow(x, 0, 1));
  return out;
}

FromOffDiagonal from_off_diagonal(const ProductI2& prod, const GFunction& F,
                                  double tol) {
  check_same_groupoid(F.gpd, prod.gpd);
  const auto& G = *prod.base_gpd;
  PdReport pd = is_positive_definite(F, tol);
  if (!pd.pd)
    throw std::invalid_argument(
        "from_off_diagonal: F not positive definite, witness unit " +
        std::to_string(pd.witness_unit));
  for (int x = 0; x < G.size(); ++x) {
    Complex a = F.v(prod.arrow(x, 1, 0));
    Complex b = std::conj(F.v(prod.arrow(G.inv(x), 0, 1)));
    if (std::abs(a - b) > tol * (1.0 + std::abs(b)))
      throw std::invalid_argument(
          "from_off_diagonal: block (1,0) is not the adjoint of block (0,1) "
          "at arrow " + std::to_string(x));
  }

  GnsResult gns = gns_bundle(F);
  const auto& h = gns.bundle;
  const int nu = G.units();
  auto punit = [&](int u, int i) { return i * nu + u; };

  // direct sum over the two copies with averaged action L'; P_u = L'(u) is a
  // projection since the connecting isometries are unitary
  std::vector<Mat> P(nu);
  std::vector<Mat> basis(nu);
  FromOffDiagonal out;
  out.bundle.gpd = prod.base_gpd;
  out.bundle.dims.resize(nu);
  out.bundle.iso.resize(G.size());
  out.xi.at.resize(nu);
  out.eta.at.resize(nu);

  auto lprime = [&](int x) {
    int d0r = h.dims[punit(G.r(x), 0)], d1r = h.dims[punit(G.r(x), 1)];
    int d0s = h.dims[punit(G.s(x), 0)], d1s = h.dims[punit(G.s(x), 1)];
    Mat m(d0r + d1r, d0s + d1s);
    m.topLeftCorner(d0r, d0s) = h.iso[prod.arrow(x, 0, 0)];
    m.topRightCorner(d0r, d1s) = h.iso[prod.arrow(x, 0, 1)];
    m.bottomLeftCorner(d1r, d0s) = h.iso[prod.arrow(x, 1, 0)];
    m.bottomRightCorner(d1r, d1s) = h.iso[prod.arrow(x, 1, 1)];
    return (0.5 * m).eval();
  };

  for (int u = 0; u < nu; ++u) {
    P[u] = lprime(u);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (P[u] + P[u].adjoint()));
    std::vector<int> keep;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
    basis[u] = Mat(P[u].rows(), keep.size());
    for (size_t i = 0; i < keep.size(); ++i)
      basis[u].col(i) = es.eigenvectors().col(keep[i]);
    out.bundle.dims[u] = static_cast<int>(keep.size());
  }
  for (int x = 0; x < G.size(); ++x)
    out.bundle.iso[x] = basis[G.r(x)].adjoint() * lprime(x) * basis[G.s(x)];

  for (int u = 0; u < nu; ++u) {
    int d0 = h.dims[punit(u, 0)], d1 = h.dims[punit(u, 1)];
    Vec z0 = Vec::Zero(d0 + d1), z1 = Vec::Zero(d0 + d1);
    z0.head(d0) = gns.cyclic.at[punit(u, 0)];
    z1.tail(d1) = gns.cyclic.at[punit(u, 1)];
    out.xi.at[u] = basis[u].adjoint() * (P[u] * z0);
    out.eta.at[u] = basis[u].adjoint() * (P[u] * z1);
  }
  GFunction c = coefficient(out.bundle, out.eta, out.xi);
  out.phi = GFunction(prod.base_gpd, (2.0 * c.v).eval());
  return out;
}

HilbertBundle random_bundle(const GroupoidPtr& g, Rng& rng, int max_extra_dim) {
  const auto& G = *g;
  std::vector<int> orbit = G.orbit_of_unit();
  HilbertBundle b;
  b.gpd = g;
  b.dims.resize(G.units());
  b.iso.resize(G.size());

  // per orbit: regular representation of the isotropy group at the root,
  // padded with trivial summands, conjugated by a random unitary per unit
  std::vector<int> root(G.units()), transport(G.units(), -1);
  std::vector<Mat> W(G.units());
  std::vector<std::vector<int>> iso_elems(G.units());
  std::vector<int> extra(G.units(), 0);
  for (int u = 0; u < G.units(); ++u) {
    root[u] = orbit[u];
    if (root[u] == u) {
      iso_elems[u] = G.isotropy(u);
      extra[u] = max_extra_dim > 0 ? rng.pick(max_extra_dim + 1) : 0;
    }
  }
  for (int u = 0; u < G.units(); ++u) {
    if (root[u] == u) {
      transport[u] = u;
      continue;
    }
    for (int x : G.r_fiber(u))
      if (G.s(x) == root[u]) {
        transport[u] = x;
        break;
      }
  }
  for (int u = 0; u < G.units(); ++u) {
    b.dims[u] = static_cast<int>(iso_elems[root[u]].size()) + extra[root[u]];
    W[u] = rng.unitary(b.dims[u]);
  }
  for (int x = 0; x < G.size(); ++x) {
    int ru = root[G.r(x)];
    const auto& elems = iso_elems[ru];
    const int k = static_cast<int>(elems.size());
    const int d = k + extra[ru];
    // t_{r(x)}^{-1} x t_{s(x)} lies in the isotropy group at the root
    int g0 = G.compose(G.compose(G.inv(transport[G.r(x)]), x), transport[G.s(x)]);
    Mat rho = Mat::Zero(d, d);
    for (int c = 0; c < k; ++c) {
      int target = G.compose(g0, elems[c]);
      int row = -1;
      for (int i = 0; i < k; ++i)
        if (elems[i] == target) row = i;
      rho(row, c) = 1.0;
    }
    for (int i = k; i < d; ++i) rho(i, i) = 1.0;
    b.iso[x] = W[G.r(x)] * rho * W[G.s(x)].adjoint();
  }
  return b;
}

BundleSection random_section(const HilbertBundle& b, Rng& rng) {
  BundleSection s;
  s.at.resize(b.dims.size());
  for (size_t u = 0; u < b.dims.size(); ++u)
    s.at[u] = rng.cgauss_vec(b.dims[u]);
  return s;
}

}  // namespace gha
