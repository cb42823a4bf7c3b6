#include "gha/cfun.hpp"

#include <stdexcept>

#include "gha/linalg.hpp"

namespace gha {

GFunction::GFunction(GroupoidPtr g, Vec values) : gpd(std::move(g)), v(std::move(values)) {
  if (v.size() != gpd->size())
    throw std::invalid_argument("GFunction: value count != arrow count");
}

DFunction::DFunction(GroupoidPtr g, Vec values) : gpd(std::move(g)), v(std::move(values)) {
  if (v.size() != gpd->units())
    throw std::invalid_argument("DFunction: value count != unit count");
}

void check_same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  if (a == b) return;
  if (!a || !b || a->digest() != b->digest())
    throw std::invalid_argument("operands live on different groupoids");
}

GFunction delta(const GroupoidPtr& g, int x) {
  GFunction f(g);
  f.v(x) = 1.0;
  return f;
}

GFunction unit_indicator(const GroupoidPtr& g) {
  GFunction f(g);
  for (int u = 0; u < g->units(); ++u) f.v(u) = 1.0;
  return f;
}

GFunction convolve(const GFunction& f, const GFunction& g) {
  check_same_groupoid(f.gpd, g.gpd);
  const auto& G = *f.gpd;
  GFunction out(f.gpd);
  for (int x = 0; x < G.size(); ++x) {
    Complex acc = 0.0;
    for (int t : G.r_fiber(G.r(x))) acc += f.v(t) * g.v(G.compose(G.inv(t), x));
    out.v(x) = acc;
  }
  return out;
}

GFunction involution(const GFunction& f) {
  GFunction out(f.gpd);
  for (int x = 0; x < f.gpd->size(); ++x) out.v(x) = std::conj(f.v(f.gpd->inv(x)));
  return out;
}

GFunction vee(const GFunction& f) {
  GFunction out(f.gpd);
  for (int x = 0; x < f.gpd->size(); ++x) out.v(x) = f.v(f.gpd->inv(x));
  return out;
}

GFunction conjugate(const GFunction& f) {
  GFunction out(f.gpd);
  out.v = f.v.conjugate();
  return out;
}

INorms i_norms(const GFunction& f) {
  const auto& G = *f.gpd;
  INorms n{0.0, 0.0, 0.0};
  for (int u = 0; u < G.units(); ++u) {
    double sr = 0.0, ss = 0.0;
    for (int x : G.r_fiber(u)) sr += std::abs(f.v(x));
    for (int x : G.s_fiber(u)) ss += std::abs(f.v(x));
    n.i_r = std::max(n.i_r, sr);
    n.i_s = std::max(n.i_s, ss);
  }
  n.i = std::max(n.i_r, n.i_s);
  return n;
}

GFunction module_act(const DFunction& b, const GFunction& f, Side side) {
  check_same_groupoid(b.gpd, f.gpd);
  const auto& G = *f.gpd;
  GFunction out(f.gpd);
  for (int x = 0; x < G.size(); ++x)
    out.v(x) = side == Side::left ? b.v(G.s(x)) * f.v(x) : f.v(x) * b.v(G.r(x));
  return out;
}

DFunction e2_inner(const GFunction& xi, const GFunction& eta) {
  check_same_groupoid(xi.gpd, eta.gpd);
  const auto& G = *xi.gpd;
  DFunction out(xi.gpd);
  for (int u = 0; u < G.units(); ++u) {
    Complex acc = 0.0;
    for (int x : G.r_fiber(u)) acc += std::conj(xi.v(x)) * eta.v(x);
    out.v(u) = acc;
  }
  return out;
}

double e2_norm(const GFunction& xi) {
  const auto& G = *xi.gpd;
  double best = 0.0;
  for (int u = 0; u < G.units(); ++u) {
    double acc = 0.0;
    for (int x : G.r_fiber(u)) acc += std::norm(xi.v(x));
    best = std::max(best, acc);
  }
  return std::sqrt(best);
}

DFunction restrict_units(const GFunction& f) {
  DFunction out(f.gpd);
  for (int u = 0; u < f.gpd->units(); ++u) out.v(u) = f.v(u);
  return out;
}

GFunction extend_units(const DFunction& b) {
  GFunction out(b.gpd);
  for (int u = 0; u < b.gpd->units(); ++u) out.v(u) = b.v(u);
  return out;
}

Mat right_fiber_matrix(const GFunction& F, int u) {
  const auto& G = *F.gpd;
  const auto& fib = G.r_fiber(u);
  const int d = static_cast<int>(fib.size());
  Mat m(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      m(a, b) = F.v(G.compose(G.inv(fib[b]), fib[a]));
  return m;
}

Mat right_matrix(const GFunction& F) {
  const auto& G = *F.gpd;
  const int n = G.size();
  Mat m = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int t : G.r_fiber(G.r(x))) m(x, t) = F.v(G.compose(G.inv(t), x));
  return m;
}

Mat left_matrix(const GFunction& F) {
  const auto& G = *F.gpd;
  const int n = G.size();
  Mat m = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y : G.s_fiber(G.s(x))) m(x, y) = F.v(G.compose(x, G.inv(y)));
  return m;
}

Mat pi_u_matrix(const GFunction& F, int u) {
  const auto& G = *F.gpd;
  const auto& fib = G.s_fiber(u);
  const int d = static_cast<int>(fib.size());
  Mat m(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      m(a, b) = F.v(G.compose(fib[a], G.inv(fib[b])));
  return m;
}

double reduced_norm(const GFunction& F) {
  double best = 0.0;
  for (int u = 0; u < F.gpd->units(); ++u)
    best = std::max(best, spectral_norm(right_fiber_matrix(F, u)));
  return best;
}

double sup_norm(const GFunction& f) {
  return f.v.size() ? f.v.cwiseAbs().maxCoeff() : 0.0;
}

double l1_total(const GFunction& f) { return f.v.cwiseAbs().sum(); }

}  // namespace gha
