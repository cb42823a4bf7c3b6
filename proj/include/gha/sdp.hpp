#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace gha {

// Feasibility template: a family of Hermitian blocks whose entries are either
// fixed constants or shared complex variables; a designated subset of real
// variables must stay below the objective t. sdp_min_t minimizes t with a
// log-det barrier method: a phase-one slack solve certifies feasibility at
// t_hi, then Newton steps follow the central path of min t. The reported
// bracket [lo, hi] surrounds the optimum with a duality-gap margin.
class SdpProblem {
 public:
  int add_block(int dim);
  // real variables capped by t; others are free complex scalars
  int add_var(bool real = false, bool capped = false);
  // place a variable at entry (i,j) of a block; the mirror entry (j,i) is
  // implied with the conjugate value
  void place(int block, int i, int j, int var, bool conj = false);
  void set_const(int block, int i, int j, std::complex<double> c);

  int blocks() const { return static_cast<int>(dims_.size()); }
  int dim(int b) const { return dims_[b]; }
  int vars() const { return static_cast<int>(real_.size()); }

  struct Pos {
    int block, i, j;
    bool conj;
  };
  struct Fixed {
    int block, i, j;
    std::complex<double> c;
  };
  const std::vector<std::vector<Pos>>& positions() const { return pos_; }
  const std::vector<Fixed>& fixed() const { return fixed_; }
  bool is_real(int v) const { return real_[v]; }
  bool is_capped(int v) const { return capped_[v]; }

 private:
  std::vector<int> dims_;
  std::vector<std::vector<Pos>> pos_;
  std::vector<Fixed> fixed_;
  std::vector<bool> real_, capped_;
};

struct SdpOptions {
  double t_lo = 0.0;
  double t_hi = 1.0;   // must be feasible
  double tol = 1e-6;
  int max_iter = 10000;
};

struct SdpResult {
  bool converged = false;
  double t = 0.0;       // feasible end of the final bracket
  double lo = 0.0, hi = 0.0;
  std::vector<std::complex<double>> var_values;
  double residual = 0.0;  // feasibility residual of the worst failed query
  long iterations = 0;
  std::string message;
};

SdpResult sdp_min_t(const SdpProblem& p, const SdpOptions& opt);

}  // namespace gha
