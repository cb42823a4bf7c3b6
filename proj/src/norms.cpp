#include "gha/norms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gha/linalg.hpp"
#include "gha/posdef.hpp"

namespace gha {

NormInterval::NormInterval(double lo, double up, std::string cert)
    : lower(lo), upper(up), certificate(std::move(cert)) {
  if (lower > upper + 1e-9)
    throw std::logic_error("norm interval inverted: [" + std::to_string(lo) +
                           ", " + std::to_string(up) + "] " + certificate);
}

BgResult bg_norm_full(const GFunction& phi, const NormOptions& opt) {
  const auto& G = *phi.gpd;
  BgResult res;
  res.prod = product_with_i2(phi.gpd);
  res.f_ext = GFunction(res.prod.gpd);

  double total = l1_total(phi);
  if (total == 0.0) {
    res.sdp.converged = true;
    return res;
  }

  SdpProblem p;
  // one rho and one tau variable per inverse pair of arrows; hermitian
  // symmetry ties the pair with a conjugation flag
  const int N = G.size();
  std::vector<int> vrho(N, -1), vtau(N, -1);
  for (int x = 0; x < N; ++x) {
    int rep = std::min(x, G.inv(x));
    if (rep != x) continue;
    bool self = G.inv(x) == x;
    bool unit = G.is_unit(x);
    vrho[x] = p.add_var(self, unit);
    vtau[x] = p.add_var(self, unit);
  }
  auto var_of = [&](const std::vector<int>& table, int z, bool* conj) {
    int rep = std::min(z, G.inv(z));
    *conj = rep != z;
    return table[rep];
  };

  for (int u = 0; u < G.units(); ++u) {
    const auto& fib = G.r_fiber(u);
    const int m = static_cast<int>(fib.size());
    int b = p.add_block(2 * m);
    for (int a = 0; a < 2 * m; ++a)
      for (int c = a; c < 2 * m; ++c) {
        int x = fib[a % m], y = fib[c % m];
        int j = a / m, k = c / m;
        int z = G.compose(G.inv(x), y);
        if (j == k) {
          bool cj;
          int v = var_of(j == 0 ? vrho : vtau, z, &cj);
          p.place(b, a, c, v, cj);
        } else {
          // a <= c forces j = 0, k = 1, the block carrying phi
          p.set_const(b, a, c, phi.v(z));
        }
      }
  }

  SdpOptions sopt;
  sopt.tol = opt.tol;
  sopt.max_iter = opt.max_iter;
  sopt.t_lo = sup_norm(phi);
  sopt.t_hi = total + std::max(1e-6, 1e-3 * total);
  res.sdp = sdp_min_t(p, sopt);
  if (!res.sdp.converged)
    throw std::runtime_error("bg_norm: SDP did not converge: " + res.sdp.message +
                             " (residual " + std::to_string(res.sdp.residual) + ")");
  res.value = res.sdp.t;

  for (int x = 0; x < N; ++x) {
    bool cj;
    int v = var_of(vrho, x, &cj);
    Complex rho = res.sdp.var_values[v];
    if (cj) rho = std::conj(rho);
    v = var_of(vtau, x, &cj);
    Complex tau = res.sdp.var_values[v];
    if (cj) tau = std::conj(tau);
    res.f_ext.v(res.prod.arrow(x, 0, 0)) = rho;
    res.f_ext.v(res.prod.arrow(x, 0, 1)) = phi.v(x);
    res.f_ext.v(res.prod.arrow(x, 1, 0)) = std::conj(phi.v(G.inv(x)));
    res.f_ext.v(res.prod.arrow(x, 1, 1)) = tau;
  }
  return res;
}

double bg_norm(const GFunction& phi, const NormOptions& opt) {
  return bg_norm_full(phi, opt).value;
}

double schur_cb_norm(const Mat& m, const NormOptions& opt) {
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  if (rows == 0 || cols == 0 || m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  SdpProblem p;
  int b = p.add_block(rows + cols);
  for (int i = 0; i < rows; ++i)
    for (int j = i; j < rows; ++j)
      p.place(b, i, j, p.add_var(i == j, i == j));
  for (int i = 0; i < cols; ++i)
    for (int j = i; j < cols; ++j)
      p.place(b, rows + i, rows + j, p.add_var(i == j, i == j));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) p.set_const(b, i, rows + j, m(i, j));

  double row_max = 0.0, col_max = 0.0;
  for (int i = 0; i < rows; ++i) row_max = std::max(row_max, m.row(i).norm());
  for (int j = 0; j < cols; ++j) col_max = std::max(col_max, m.col(j).norm());
  SdpOptions sopt;
  sopt.tol = opt.tol;
  sopt.max_iter = opt.max_iter;
  sopt.t_lo = m.cwiseAbs().maxCoeff();
  double hi = std::min(row_max, col_max);
  sopt.t_hi = hi + std::max(1e-6, 1e-3 * hi);
  SdpResult r = sdp_min_t(p, sopt);
  if (!r.converged)
    throw std::runtime_error("schur_cb_norm: SDP did not converge: " + r.message);
  return r.t;
}

namespace {

double ratio_lower(const GFunction& phi, Rng& rng) {
  const auto& G = *phi.gpd;
  const int N = G.size();
  double best = 0.0;
  auto ratio = [&](const Vec& f) {
    GFunction ff(phi.gpd, f);
    double den = reduced_norm(ff);
    if (den < 1e-14) return 0.0;
    GFunction pf(phi.gpd, (phi.v.array() * f.array()).matrix().eval());
    return reduced_norm(pf) / den;
  };
  for (int x = 0; x < N; ++x) best = std::max(best, std::abs(phi.v(x)));
  for (int restart = 0; restart < 32; ++restart) {
    Vec f = rng.cgauss_vec(N);
    double cur = ratio(f);
    for (int step = 0; step < 60; ++step) {
      double sigma = 0.5 * std::pow(0.92, step);
      Vec trial = f + sigma * rng.cgauss_vec(N);
      double val = ratio(trial);
      if (val > cur) {
        cur = val;
        f = trial;
      }
    }
    best = std::max(best, cur);
  }
  return best;
}

}  // namespace

NormInterval cb_norm_interval(const GFunction& phi, const NormOptions& opt) {
  const auto& G = *phi.gpd;
  double upper = 0.0;
  int arg_u = -1;
  for (int u = 0; u < G.units(); ++u) {
    const auto& fib = G.s_fiber(u);
    if (fib.empty()) continue;
    double v = schur_cb_norm(pi_u_matrix(phi, u), opt);
    if (v > upper) {
      upper = v;
      arg_u = u;
    }
  }
  Rng rng(opt.seed * 1000003u + 17u);
  double lower = ratio_lower(phi, rng);
  if (lower > upper + 10.0 * opt.tol + 1e-8)
    throw std::logic_error("cb interval inconsistent: ascent beat the SDP upper");
  lower = std::min(lower, upper);
  std::ostringstream cert;
  cert << "upper: schur symbol at unit " << arg_u << "; lower: multiplier ascent";
  return NormInterval(lower, upper, cert.str());
}

namespace {

struct Family {
  std::vector<GFunction> f, g;
};

double family_value(const Family& fam) {
  double acc = 0.0;
  for (size_t n = 0; n < fam.f.size(); ++n)
    acc += e2_norm(fam.f[n]) * e2_norm(fam.g[n]);
  return acc;
}

GFunction family_realize(const GroupoidPtr& gpd, const Family& fam) {
  GFunction acc(gpd);
  for (size_t n = 0; n < fam.f.size(); ++n)
    acc.v += convolve(fam.g[n], involution(fam.f[n])).v;
  return acc;
}

void balance(Family& fam) {
  for (size_t n = 0; n < fam.f.size(); ++n) {
    double a = e2_norm(fam.f[n]), b = e2_norm(fam.g[n]);
    if (a < 1e-14 || b < 1e-14) {
      fam.f[n].v.setZero();
      fam.g[n].v.setZero();
      continue;
    }
    double s = std::sqrt(b / a);
    fam.f[n].v *= s;
    fam.g[n].v /= s;
  }
}

// least-norm update of g with f fixed: per arrow x the family must satisfy
// sum_{y in G^{s(x)}} sum_n conj(f_n(y)) g_n(xy) = phi(x)
void solve_g(const GFunction& phi, Family& fam) {
  const auto& G = *phi.gpd;
  const int N = G.size(), k = static_cast<int>(fam.f.size());
  Mat A = Mat::Zero(N, N * k);
  for (int x = 0; x < N; ++x)
    for (int y : G.r_fiber(G.s(x))) {
      int t = G.compose(x, y);
      for (int n = 0; n < k; ++n) A(x, t * k + n) += std::conj(fam.f[n].v(y));
    }
  Vec sol = A.completeOrthogonalDecomposition().solve(phi.v);
  for (int n = 0; n < k; ++n)
    for (int t = 0; t < N; ++t) fam.g[n].v(t) = sol(t * k + n);
}

void solve_f(const GFunction& phi, Family& fam) {
  const auto& G = *phi.gpd;
  const int N = G.size(), k = static_cast<int>(fam.f.size());
  Mat A = Mat::Zero(N, N * k);
  for (int x = 0; x < N; ++x)
    for (int y : G.r_fiber(G.s(x))) {
      int t = G.compose(x, y);
      for (int n = 0; n < k; ++n) A(x, y * k + n) += std::conj(fam.g[n].v(t));
    }
  Vec sol = A.completeOrthogonalDecomposition().solve(phi.v.conjugate());
  for (int n = 0; n < k; ++n)
    for (int y = 0; y < N; ++y) fam.f[n].v(y) = sol(y * k + n);
}

double family_upper(const GFunction& phi, const Family& fam) {
  GFunction err(phi.gpd, (phi.v - family_realize(phi.gpd, fam).v).eval());
  return family_value(fam) + l1_total(err);
}

double als_upper(const GFunction& phi, int k, int rounds, Family seed, std::string* cert) {
  Family fam = std::move(seed);
  double best = family_upper(phi, fam);
  for (int round = 0; round < rounds; ++round) {
    solve_g(phi, fam);
    balance(fam);
    solve_f(phi, fam);
    balance(fam);
    double v = family_upper(phi, fam);
    if (v < best - 1e-13) {
      best = v;
    } else if (round > 4) {
      break;
    }
  }
  if (cert) *cert = "als(k=" + std::to_string(k) + ")";
  return best;
}

// pair-groupoid shape: transitive, principal, arrows = units^2
bool pairlike(const Groupoid& G, std::vector<int>* at) {
  const int n = G.units();
  if (G.size() != n * n) return false;
  at->assign(n * n, -1);
  for (int x = 0; x < G.size(); ++x) {
    int& slot = (*at)[G.r(x) * n + G.s(x)];
    if (slot != -1) return false;
    slot = x;
  }
  return true;
}

}  // namespace

NormInterval a1_norm_interval(const GFunction& phi, const NormOptions& opt) {
  const auto& G = *phi.gpd;
  const int N = G.size();
  if (l1_total(phi) == 0.0) return NormInterval(0.0, 0.0, "zero");

  BgResult bg = bg_norm_full(phi, opt);
  // the certified side of the bg bracket; the feasible end may overshoot
  double lower = std::max(sup_norm(phi), bg.sdp.lo - 1e-6 * (1.0 + bg.sdp.lo));

  double upper = l1_total(phi);
  std::string cert = "deltas";

  PdReport pd = is_positive_definite(phi);
  if (pd.pd) {
    GFunction xi = pd_compact_to_regular(phi);
    GFunction back = convolve(xi, involution(xi));
    GFunction err(phi.gpd, (phi.v - back.v).eval());
    double v = e2_norm(xi) * e2_norm(xi) + l1_total(err);
    if (v < upper) {
      upper = v;
      cert = "pd regular realization";
    }
  }

  std::vector<int> at;
  if (pairlike(G, &at)) {
    const int n = G.units();
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = phi.v(at[i * n + j]);
    // factor the schur completion through R^(1/2), T^(1/2)
    SdpProblem p;
    int b = p.add_block(2 * n);
    std::vector<std::vector<int>> vr(n, std::vector<int>(n, -1)), vt = vr;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        vr[i][j] = p.add_var(i == j, i == j);
        vt[i][j] = p.add_var(i == j, i == j);
        p.place(b, i, j, vr[i][j]);
        p.place(b, n + i, n + j, vt[i][j]);
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p.set_const(b, i, n + j, A(i, j));
    double row_max = 0.0, col_max = 0.0;
    for (int i = 0; i < n; ++i) row_max = std::max(row_max, A.row(i).norm());
    for (int j = 0; j < n; ++j) col_max = std::max(col_max, A.col(j).norm());
    SdpOptions sopt;
    sopt.tol = opt.tol;
    sopt.max_iter = opt.max_iter;
    sopt.t_lo = A.cwiseAbs().maxCoeff();
    sopt.t_hi = std::min(row_max, col_max) + std::max(1e-6, 1e-3 * std::min(row_max, col_max));
    SdpResult sr = sdp_min_t(p, sopt);
    if (sr.converged) {
      Mat R(n, n), T(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          R(i, j) = sr.var_values[vr[i][j]];
          R(j, i) = std::conj(R(i, j));
          T(i, j) = sr.var_values[vt[i][j]];
          T(j, i) = std::conj(T(i, j));
        }
      auto half = [](const Mat& m, bool inverse) {
        Eigen::SelfAdjointEigenSolver<Mat> es(m);
        Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
        Eigen::VectorXd root = lam.cwiseSqrt();
        if (inverse)
          for (int i = 0; i < root.size(); ++i)
            root(i) = root(i) > 1e-10 ? 1.0 / root(i) : 0.0;
        return Mat(es.eigenvectors() * root.asDiagonal() *
                   es.eigenvectors().adjoint());
      };
      Mat C = half(R, true) * A * half(T, true);
      Mat FS = (C * half(T, false)).conjugate();  // columns are f_j
      Mat GS = half(R, false).conjugate();        // columns are g_i
      Family fam;
      fam.f.assign(1, GFunction(phi.gpd));
      fam.g.assign(1, GFunction(phi.gpd));
      for (int j = 0; j < n; ++j)
        for (int kk = 0; kk < n; ++kk) fam.f[0].v(at[j * n + kk]) = FS(kk, j);
      for (int i = 0; i < n; ++i)
        for (int kk = 0; kk < n; ++kk) fam.g[0].v(at[i * n + kk]) = GS(kk, i);
      std::string c2;
      double v = als_upper(phi, 1, 40, fam, &c2);
      if (v < upper) {
        upper = v;
        cert = "schur factorization";
      }
    }
  }

  Rng rng(opt.seed * 7919u + 101u);
  const int kmax = std::max(1, std::min(N, G.units() * G.max_r_fiber()));
  for (int restart = 0; restart < 16; ++restart) {
    int k = 1 + restart % kmax;
    Family fam;
    fam.f.assign(k, GFunction(phi.gpd));
    fam.g.assign(k, GFunction(phi.gpd));
    for (int n = 0; n < k; ++n) {
      fam.f[n].v = rng.cgauss_vec(N);
      fam.g[n].v = rng.cgauss_vec(N);
    }
    std::string c2;
    double v = als_upper(phi, k, 30, fam, &c2);
    if (v < upper) {
      upper = v;
      cert = c2;
    }
  }

  if (lower > upper + 10.0 * opt.tol + 1e-8)
    throw std::logic_error("a1 interval inconsistent: lower " +
                           std::to_string(lower) + " beat upper " +
                           std::to_string(upper) + " (" + cert + ")");
  lower = std::min(lower, upper);
  return NormInterval(lower, upper, cert);
}

}  // namespace gha
