#include "gha/vn.hpp"

#include <stdexcept>

namespace gha {

bool is_fiber_diagonal(const ModuleOperator& t, double tol) {
  const auto& G = *t.gpd;
  double scale = 1.0 + (t.m.size() ? t.m.cwiseAbs().maxCoeff() : 0.0);
  for (int x = 0; x < G.size(); ++x)
    for (int y = 0; y < G.size(); ++y)
      if (G.r(x) != G.r(y) && std::abs(t.m(x, y)) > tol * scale) return false;
  return true;
}

ModuleOperator left_operator(const GFunction& f) {
  return {f.gpd, left_matrix(f)};
}

ModuleOperator right_operator(const GFunction& f) {
  return {f.gpd, right_matrix(f)};
}

namespace {

// stack the commutator constraints [T, R_x] = 0 over all generators into
// one matrix acting on vec(T), column major
Mat commutator_system(const Groupoid& G) {
  const int n = G.size();
  std::vector<Mat> gens;
  gens.reserve(n);
  for (int x = 0; x < n; ++x) {
    Mat r = Mat::Zero(n, n);
    for (int t = 0; t < n; ++t)
      if (G.s(t) == G.r(x)) r(G.compose(t, x), t) = 1.0;
    gens.push_back(std::move(r));
  }
  Mat sys = Mat::Zero(n * n * n, n * n);
  for (int g = 0; g < n; ++g) {
    const Mat& r = gens[g];
    // vec(T R - R T): (R^T kron I - I kron R) vec(T)
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        if (r(d, c) != 0.0) {
          // contribution of T(:,d) r(d,c) to column c block
          for (int a = 0; a < n; ++a)
            sys(g * n * n + c * n + a, d * n + a) += r(d, c);
        }
        if (r(c, d) != 0.0) {
          // contribution of -r(c,d) T(d,:) to rows c
          for (int bcol = 0; bcol < n; ++bcol)
            sys(g * n * n + bcol * n + c, bcol * n + d) -= r(c, d);
        }
      }
  }
  return sys;
}

}  // namespace

std::vector<ModuleOperator> commutant_of_right(const GroupoidPtr& g, double rtol) {
  const auto& G = *g;
  const int n = G.size();
  Mat basis = nullspace(commutator_system(G), rtol);
  std::vector<ModuleOperator> out;
  for (int c = 0; c < basis.cols(); ++c) {
    Mat t(n, n);
    for (int j = 0; j < n; ++j) t.col(j) = basis.col(c).segment(j * n, n);
    out.push_back({g, std::move(t)});
  }
  return out;
}

std::vector<ModuleOperator> cred_span(const GroupoidPtr& g, double rtol) {
  const auto& G = *g;
  const int n = G.size();
  Mat stack(n * n, n);
  for (int x = 0; x < n; ++x) {
    Mat r = right_matrix(delta(g, x));
    for (int j = 0; j < n; ++j) stack.col(x).segment(j * n, n) = r.col(j);
  }
  Mat basis = column_span(stack, rtol);
  std::vector<ModuleOperator> out;
  for (int c = 0; c < basis.cols(); ++c) {
    Mat t(n, n);
    for (int j = 0; j < n; ++j) t.col(j) = basis.col(c).segment(j * n, n);
    out.push_back({g, std::move(t)});
  }
  return out;
}

VnDims vn_dims(const GroupoidPtr& g) {
  const auto& G = *g;
  VnDims d{};
  d.b_e2 = G.size() * G.size();
  d.module = 0;
  for (int u = 0; u < G.units(); ++u) {
    int m = static_cast<int>(G.r_fiber(u).size());
    d.module += m * m;
  }
  const int n = G.size();
  Mat vn_basis = nullspace(commutator_system(G));
  d.vn = static_cast<int>(vn_basis.cols());
  Mat stack(n * n, n);
  for (int x = 0; x < n; ++x) {
    Mat r = right_matrix(delta(g, x));
    for (int j = 0; j < n; ++j) stack.col(x).segment(j * n, n) = r.col(j);
  }
  Mat cred_basis = column_span(stack);
  d.cred = static_cast<int>(cred_basis.cols());
  d.intersection =
      static_cast<int>(subspace_intersection(vn_basis, cred_basis).cols());
  return d;
}

DFunction ModuleFunctional::apply(const GFunction& phi) const {
  check_same_groupoid(gpd, phi.gpd);
  return DFunction(gpd, a * phi.v);
}

ModuleFunctional alpha_from_operator(const ModuleOperator& t, double tol) {
  const auto& G = *t.gpd;
  double scale = 1.0 + (t.m.size() ? t.m.cwiseAbs().maxCoeff() : 0.0);
  for (int x = 0; x < G.size(); ++x) {
    Mat r = right_matrix(delta(t.gpd, x));
    double defect = (t.m * r - r * t.m).cwiseAbs().maxCoeff();
    if (defect > tol * scale)
      throw std::invalid_argument(
          "alpha_from_operator: operator not in the commutant, defect " +
          std::to_string(defect) + " at generator " + std::to_string(x));
  }
  ModuleFunctional al;
  al.gpd = t.gpd;
  al.a = Mat::Zero(G.units(), G.size());
  // alpha(delta_x) = conj(T(delta_{x^{-1}})) on units
  for (int x = 0; x < G.size(); ++x)
    for (int u = 0; u < G.units(); ++u)
      al.a(u, x) = std::conj(t.m(u, G.inv(x)));
  return al;
}

ModuleOperator operator_from_alpha(const ModuleFunctional& alpha, double* residual) {
  const auto& G = *alpha.gpd;
  GFunction f(alpha.gpd);
  for (int z = 0; z < G.size(); ++z) f.v(z) = std::conj(alpha.a(G.r(z), z));
  ModuleOperator t = left_operator(f);
  if (residual) {
    // defining identity on point masses: alpha(delta_y * delta_x^*)(u)
    // must equal <T delta_x, delta_y>(u)
    double worst = 0.0;
    for (int x = 0; x < G.size(); ++x) {
      Vec tx = t.m.col(x);
      for (int y = 0; y < G.size(); ++y) {
        GFunction prod = convolve(delta(alpha.gpd, y),
                                  involution(delta(alpha.gpd, x)));
        Vec lhs = alpha.a * prod.v;
        for (int u = 0; u < G.units(); ++u) {
          Complex rhs = 0.0;
          // <T delta_x, delta_y>(u) collapses to conj((T delta_x)(y)) at r(y)=u
          if (G.r(y) == u) rhs = std::conj(tx(y));
          worst = std::max(worst, std::abs(lhs(u) - rhs));
        }
      }
    }
    *residual = worst;
  }
  return t;
}

namespace {

// alternating ascent of max_u ||(Tf)^u|| over the product of fiber unit
// balls; returns the best value and leaves the witness in f_best
double ascent_lower(const ModuleOperator& t, uint64_t seed, Vec* f_best) {
  const auto& G = *t.gpd;
  Rng rng(seed * 2654435769u + 3u);
  double lower = 0.0;
  for (int u = 0; u < G.units(); ++u) {
    const auto& fu = G.r_fiber(u);
    if (fu.empty()) continue;
    for (int restart = 0; restart < 4; ++restart) {
      Vec f = rng.cgauss_vec(G.size());
      for (int it = 0; it < 50; ++it) {
        for (int v = 0; v < G.units(); ++v) {
          double nv = 0.0;
          for (int x : G.r_fiber(v)) nv += std::norm(f(x));
          nv = std::sqrt(nv);
          if (nv > 1e-14)
            for (int x : G.r_fiber(v)) f(x) /= nv;
        }
        Vec img = t.m * f;
        Vec w = Vec::Zero(fu.size());
        for (size_t i = 0; i < fu.size(); ++i) w(i) = img(fu[i]);
        double wn = w.norm();
        if (wn > lower) {
          lower = wn;
          if (f_best) *f_best = f;
        }
        if (wn < 1e-14) break;
        w /= wn;
        // steepest direction for Re<w, (Tf)^u>
        Vec grad = Vec::Zero(G.size());
        for (size_t i = 0; i < fu.size(); ++i)
          grad += t.m.row(fu[i]).adjoint() * w(i);
        f = grad;
      }
    }
  }
  return lower;
}

}  // namespace

OpNormBounds operator_norm_e2(const ModuleOperator& t, uint64_t seed,
                              double extra_upper_cap) {
  const auto& G = *t.gpd;
  OpNormBounds out{0.0, 0.0, false};
  if (is_fiber_diagonal(t)) {
    double best = 0.0;
    for (int u = 0; u < G.units(); ++u) {
      const auto& fib = G.r_fiber(u);
      Mat blk(fib.size(), fib.size());
      for (size_t i = 0; i < fib.size(); ++i)
        for (size_t j = 0; j < fib.size(); ++j) blk(i, j) = t.m(fib[i], fib[j]);
      best = std::max(best, spectral_norm(blk));
    }
    out.lower = out.upper = best;
    out.exact = true;
    return out;
  }
  // upper: row-block triangle bound
  double upper = 0.0;
  for (int u = 0; u < G.units(); ++u) {
    double acc = 0.0;
    for (int v = 0; v < G.units(); ++v) {
      const auto& fu = G.r_fiber(u);
      const auto& fv = G.r_fiber(v);
      Mat blk(fu.size(), fv.size());
      for (size_t i = 0; i < fu.size(); ++i)
        for (size_t j = 0; j < fv.size(); ++j) blk(i, j) = t.m(fu[i], fv[j]);
      acc += spectral_norm(blk);
    }
    upper = std::max(upper, acc);
  }
  if (extra_upper_cap >= 0.0) upper = std::min(upper, extra_upper_cap);
  double lower = ascent_lower(t, seed, nullptr);
  if (lower > upper + 1e-9) throw std::logic_error("operator_norm_e2 bounds crossed");
  out.lower = std::min(lower, upper);
  out.upper = upper;
  return out;
}

IsometryReport isometry_check(const ModuleOperator& t, int samples,
                              uint64_t seed, double tol) {
  const auto& G = *t.gpd;
  IsometryReport rep{};
  rep.op = operator_norm_e2(t, seed);
  ModuleFunctional al = alpha_from_operator(t, std::max(tol, 1e-8));
  Rng rng(seed * 16777619u + 29u);

  double best = 0.0;
  auto probe = [&](const GFunction& f, const GFunction& g) {
    double nf = e2_norm(f), ng = e2_norm(g);
    if (nf < 1e-14 || ng < 1e-14) return;
    GFunction phi = convolve(g, involution(f));
    Vec val = al.a * phi.v;
    best = std::max(best, val.cwiseAbs().maxCoeff() / (nf * ng));
  };
  for (int k = 0; k < samples; ++k) {
    GFunction f(t.gpd, rng.cgauss_vec(G.size()));
    GFunction g(t.gpd, rng.cgauss_vec(G.size()));
    probe(f, g);
    GFunction tf(t.gpd, (t.m * f.v).eval());
    probe(f, tf);
  }
  // aligned probe at the ascent witness recovers the operator lower bound
  Vec wit;
  ascent_lower(t, seed, &wit);
  if (wit.size() == G.size()) {
    GFunction f(t.gpd, wit);
    GFunction tf(t.gpd, (t.m * wit).eval());
    probe(f, tf);
  }
  rep.functional_lower = best;
  rep.gap = rep.op.upper - best;
  rep.consistent = best <= rep.op.upper + tol * (1.0 + rep.op.upper);
  return rep;
}

DFunction support_multiplier_extract(const GroupoidPtr& g, const Mat& r,
                                     double tol) {
  const auto& G = *g;
  if (r.rows() != G.units() || r.cols() != G.units())
    throw std::invalid_argument("support_multiplier_extract: wrong shape");
  double scale = 1.0 + (r.size() ? r.cwiseAbs().maxCoeff() : 0.0);
  for (int u = 0; u < G.units(); ++u)
    for (int v = 0; v < G.units(); ++v)
      if (u != v && std::abs(r(u, v)) > tol * scale)
        throw std::invalid_argument(
            "support_multiplier_extract: off diagonal entry at (" +
            std::to_string(u) + "," + std::to_string(v) + ")");
  DFunction k(g);
  for (int u = 0; u < G.units(); ++u) k.v(u) = r(u, u);
  return k;
}

}  // namespace gha
