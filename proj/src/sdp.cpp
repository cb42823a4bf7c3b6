#include "gha/sdp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gha {

using Mat = Eigen::MatrixXcd;
using Complex = std::complex<double>;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

int SdpProblem::add_block(int dim) {
  dims_.push_back(dim);
  return blocks() - 1;
}

int SdpProblem::add_var(bool real, bool capped) {
  real_.push_back(real || capped);
  capped_.push_back(capped);
  pos_.emplace_back();
  return vars() - 1;
}

void SdpProblem::place(int block, int i, int j, int var, bool conj) {
  pos_[var].push_back({block, i, j, conj});
}

void SdpProblem::set_const(int block, int i, int j, Complex c) {
  fixed_.push_back({block, i, j, c});
}

namespace {

struct Atom {
  int block, p, q;  // contributes w E_pq and conj(w) E_qp
  Complex w;
};

// barrier model: blocks S_b(z) = C_b + sum_i z_i A_{b,i} with A encoded as
// atom lists; coordinates are the real and imaginary parts of the problem
// variables, then t (when anything is capped), then the phase-one slack
class Model {
 public:
  Model(const SdpProblem& p, double t_hi) : p_(p) {
    for (int v = 0; v < p.vars(); ++v) {
      coord_of_var_.push_back(ncoord_);
      ncoord_ += p.is_real(v) ? 1 : 2;
    }
    tcoord_ = -1;
    bool any_cap = false;
    for (int v = 0; v < p.vars(); ++v) any_cap = any_cap || p.is_capped(v);
    if (any_cap) tcoord_ = ncoord_++;
    scoord_ = ncoord_++;  // phase-one slack, frozen at 0 in phase two

    dims_ = std::vector<int>(p.blocks());
    for (int b = 0; b < p.blocks(); ++b) dims_[b] = p.dim(b);
    for (int v = 0; v < p.vars(); ++v)
      if (p.is_capped(v)) {
        cap_block_of_var_.push_back({v, static_cast<int>(dims_.size())});
        dims_.push_back(1);
      }

    consts_.resize(dims_.size());
    for (size_t b = 0; b < dims_.size(); ++b)
      consts_[b] = Mat::Zero(dims_[b], dims_[b]);
    for (const auto& f : p.fixed()) {
      consts_[f.block](f.i, f.j) = f.c;
      if (f.i != f.j) consts_[f.block](f.j, f.i) = std::conj(f.c);
    }

    atoms_.resize(ncoord_);
    for (int v = 0; v < p.vars(); ++v) {
      int cr = coord_of_var_[v];
      for (const auto& q : p.positions()[v]) {
        atoms_[cr].push_back({q.block, q.i, q.j, Complex(1.0, 0.0)});
        if (!p.is_real(v))
          atoms_[cr + 1].push_back(
              {q.block, q.i, q.j, q.conj ? Complex(0, -1) : Complex(0, 1)});
      }
    }
    for (const auto& [v, b] : cap_block_of_var_) {
      atoms_[coord_of_var_[v]].push_back({b, 0, 0, Complex(-1.0, 0.0)});
      atoms_[tcoord_].push_back({b, 0, 0, Complex(1.0, 0.0)});
    }
    for (size_t b = 0; b < dims_.size(); ++b)
      atoms_[scoord_].push_back({static_cast<int>(b), -1, -1, Complex(1.0, 0.0)});

    nu_ = 0;
    for (int d : dims_) nu_ += d;

    scale_ = 1.0;
    for (const auto& f : p.fixed()) scale_ = std::max(scale_, std::abs(f.c));
    scale_ = std::max(scale_, std::abs(t_hi));
  }

  int ncoord() const { return ncoord_; }
  int tcoord() const { return tcoord_; }
  int scoord() const { return scoord_; }
  int nu() const { return nu_; }
  double scale() const { return scale_; }

  std::vector<Mat> assemble(const RVec& z) const {
    std::vector<Mat> s(consts_.size());
    for (size_t b = 0; b < consts_.size(); ++b) s[b] = consts_[b];
    for (int c = 0; c < ncoord_; ++c) {
      if (z(c) == 0.0) continue;
      for (const auto& a : atoms_[c]) apply_atom(s, a, z(c));
    }
    return s;
  }

  // smallest eigenvalue over the blocks
  static double min_eig(const std::vector<Mat>& s) {
    double lam = std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<Mat> es;
    for (const auto& m : s) {
      es.compute(m, Eigen::EigenvaluesOnly);
      lam = std::min(lam, es.eigenvalues().minCoeff());
    }
    return lam;
  }

  std::vector<Complex> extract(const RVec& z) const {
    std::vector<Complex> out(p_.vars());
    for (int v = 0; v < p_.vars(); ++v) {
      int c = coord_of_var_[v];
      out[v] = p_.is_real(v) ? Complex(z(c), 0.0) : Complex(z(c), z(c + 1));
    }
    return out;
  }

  void apply_atom(std::vector<Mat>& s, const Atom& a, double x) const {
    if (a.p < 0) {  // slack atom: x I on the whole block
      s[a.block].diagonal().array() += x;
      return;
    }
    Complex w = a.w * x;
    if (a.p == a.q) {
      s[a.block](a.p, a.p) += w.real();
    } else {
      s[a.block](a.p, a.q) += w;
      s[a.block](a.q, a.p) += std::conj(w);
    }
  }

  // gradient and hessian of -sum_b logdet S_b restricted to `active`
  // coordinates; returns false when some block is not positive definite
  bool barrier(const std::vector<Mat>& s, const std::vector<int>& active,
               double* logdet, RVec* grad, RMat* hess) const {
    const int na = static_cast<int>(active.size());
    std::vector<Mat> inv(s.size());
    double ld = 0.0;
    for (size_t b = 0; b < s.size(); ++b) {
      Eigen::LLT<Mat> llt(s[b]);
      if (llt.info() != Eigen::Success) return false;
      Mat l = llt.matrixL();
      for (int i = 0; i < l.rows(); ++i) ld += 2.0 * std::log(l(i, i).real());
      inv[b] = llt.solve(Mat::Identity(s[b].rows(), s[b].cols()));
    }
    if (logdet) *logdet = ld;
    if (!grad) return true;

    grad->setZero(na);
    for (int k = 0; k < na; ++k)
      for (const auto& a : atoms_[active[k]]) (*grad)(k) -= tr_atom(inv, a);

    if (!hess) return true;
    hess->setZero(na, na);
    // Z_k = S^{-1} A_k S^{-1}, assembled from columns of the inverses
    std::vector<std::vector<Mat>> zk(na);
    for (int k = 0; k < na; ++k) {
      zk[k].assign(s.size(), Mat());
      for (const auto& a : atoms_[active[k]]) {
        Mat& z = zk[k][a.block];
        if (z.size() == 0) z = Mat::Zero(s[a.block].rows(), s[a.block].cols());
        if (a.p < 0) {
          z += inv[a.block] * inv[a.block];
        } else if (a.p == a.q) {
          z += a.w.real() * inv[a.block].col(a.p) *
               inv[a.block].col(a.p).adjoint();
        } else {
          z += a.w * inv[a.block].col(a.p) * inv[a.block].col(a.q).adjoint();
          z += std::conj(a.w) * inv[a.block].col(a.q) *
               inv[a.block].col(a.p).adjoint();
        }
      }
    }
    for (int k = 0; k < na; ++k)
      for (int l = k; l < na; ++l) {
        double h = 0.0;
        for (const auto& a : atoms_[active[l]]) {
          const Mat& z = zk[k][a.block];
          if (z.size() == 0) continue;
          h += tr_block_atom(z, a);
        }
        (*hess)(k, l) = h;
        (*hess)(l, k) = h;
      }
    return true;
  }

 private:
  static double tr_atom(const std::vector<Mat>& m, const Atom& a) {
    return tr_block_atom(m[a.block], a);
  }
  static double tr_block_atom(const Mat& m, const Atom& a) {
    if (a.p < 0) return m.trace().real();
    if (a.p == a.q) return a.w.real() * m(a.p, a.p).real();
    return 2.0 * (a.w * m(a.q, a.p)).real();
  }

  const SdpProblem& p_;
  int ncoord_ = 0, tcoord_ = -1, scoord_ = -1, nu_ = 0;
  double scale_ = 1.0;
  std::vector<int> coord_of_var_;
  std::vector<std::pair<int, int>> cap_block_of_var_;
  std::vector<int> dims_;
  std::vector<Mat> consts_;
  std::vector<std::vector<Atom>> atoms_;
};

// centering step: minimize c.z / mu - sum logdet S(z) over the active
// coordinates; z is updated in place, returns false on iteration trouble
bool center(const Model& model, const std::vector<int>& active,
            const RVec& cost, double mu, RVec* z, long* newton_steps,
            long max_steps) {
  const int na = static_cast<int>(active.size());
  RVec grad(na);
  RMat hess(na, na);
  for (int it = 0; it < 60; ++it) {
    if (*newton_steps >= max_steps) return false;
    ++*newton_steps;
    auto s = model.assemble(*z);
    double ld = 0.0;
    if (!model.barrier(s, active, &ld, &grad, &hess)) return false;
    for (int k = 0; k < na; ++k) grad(k) += cost(active[k]) / mu;
    hess.diagonal().array() += 1e-12;
    Eigen::LDLT<RMat> ldlt(hess);
    RVec d = ldlt.solve(-grad);
    double dec2 = -grad.dot(d);
    if (!(dec2 > 0)) return true;  // at or past the optimum for this mu
    if (std::sqrt(dec2) < 1e-8) return true;

    double f0 = cost.dot(*z) / mu - ld;
    // largest step keeping every block positive definite, then armijo
    double alpha = 1.0;
    for (int bt = 0; bt < 60; ++bt) {
      RVec zt = *z;
      for (int k = 0; k < na; ++k) zt(active[k]) += alpha * d(k);
      auto st = model.assemble(zt);
      double ldt = 0.0;
      if (model.barrier(st, active, &ldt, nullptr, nullptr)) {
        double ft = cost.dot(zt) / mu - ldt;
        if (ft <= f0 - 0.25 * alpha * dec2 + 1e-12 * std::abs(f0)) {
          *z = zt;
          break;
        }
      }
      alpha *= 0.5;
      if (bt == 59) return true;  // line search exhausted: accept current z
    }
    if (std::sqrt(dec2) * alpha < 1e-9) return true;
  }
  return true;
}

}  // namespace

SdpResult sdp_min_t(const SdpProblem& p, const SdpOptions& opt) {
  Model model(p, opt.t_hi);
  SdpResult res;
  res.lo = opt.t_lo;
  res.hi = opt.t_hi;
  res.t = opt.t_hi;

  const int n = model.ncoord();
  const double scale = model.scale();
  const double band = 1e-7 * scale;
  RVec z = RVec::Zero(n);
  if (model.tcoord() >= 0) z(model.tcoord()) = opt.t_hi;

  // phase one: minimize the slack s with S(x, t_hi) + s I > 0
  {
    auto s0 = model.assemble(z);
    z(model.scoord()) = std::max(0.0, -Model::min_eig(s0)) + scale;
    std::vector<int> active;
    for (int c = 0; c < n; ++c)
      if (c != model.tcoord()) active.push_back(c);
    RVec cost = RVec::Zero(n);
    cost(model.scoord()) = 1.0;

    double mu = scale;
    const double mu_end = band / (8.0 * model.nu());
    while (true) {
      if (!center(model, active, cost, mu, &z, &res.iterations, opt.max_iter)) {
        res.converged = false;
        res.message = "iteration cap hit before the upper bound was certified";
        res.residual = std::max(0.0, z(model.scoord()));
        return res;
      }
      if (z(model.scoord()) < -4.0 * band) break;  // interior point found
      if (mu <= mu_end) break;
      mu = std::max(mu * 0.15, mu_end);
    }
    double slack = z(model.scoord());
    if (slack > band) {
      res.converged = false;
      res.residual = slack;
      res.message = "infeasible at the stated upper bound";
      res.var_values = model.extract(z);
      return res;
    }
    if (slack > -4.0 * band || model.tcoord() < 0) {
      // marginally feasible at t_hi, or nothing is capped: the level
      // cannot move, so report the endpoint
      res.converged = true;
      res.t = res.hi = model.tcoord() < 0 ? opt.t_lo : opt.t_hi;
      res.lo = std::max(opt.t_lo, res.t - std::max(opt.tol, 8.0 * band));
      res.var_values = model.extract(z);
      res.residual = std::max(0.0, slack);
      return res;
    }
  }

  // phase two: ride the central path of min t with the slack frozen
  {
    double keep = z(model.scoord());
    z(model.scoord()) = 0.0;
    if (!model.barrier(model.assemble(z), {}, nullptr, nullptr, nullptr))
      z(model.scoord()) = keep * 0.5;  // stay strictly inside

    std::vector<int> active;
    for (int c = 0; c < n; ++c)
      if (c != model.scoord()) active.push_back(c);
    RVec cost = RVec::Zero(n);
    cost(model.tcoord()) = 1.0;

    double mu = scale;
    const double gap_target = 0.25 * opt.tol;
    const double mu_end = gap_target / (4.0 * model.nu());
    while (true) {
      if (!center(model, active, cost, mu, &z, &res.iterations, opt.max_iter)) {
        // honest but unconverged: the current point is still feasible
        res.t = res.hi = z(model.tcoord());
        res.lo = std::max(opt.t_lo, res.t - 4.0 * model.nu() * mu);
        res.var_values = model.extract(z);
        res.converged = false;
        res.message = "iteration cap hit on the central path";
        return res;
      }
      if (mu <= mu_end) break;
      mu = std::max(mu * 0.15, mu_end);
    }
    res.t = res.hi = z(model.tcoord());
    res.lo = std::max(opt.t_lo, res.t - 4.0 * model.nu() * mu_end);
    res.var_values = model.extract(z);
    res.converged = true;
  }
  return res;
}

}  // namespace gha
