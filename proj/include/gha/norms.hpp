#pragma once

#include <cstdint>

#include "gha/cfun.hpp"
#include "gha/groupoid.hpp"
#include "gha/sdp.hpp"

namespace gha {

struct NormInterval {
  double lower = 0.0, upper = 0.0;
  std::string certificate;
  NormInterval() = default;
  NormInterval(double lo, double up, std::string cert);
};

struct NormOptions {
  double tol = 1e-6;
  int max_iter = 10000;
  uint64_t seed = 0;
};

// Fourier-Stieltjes norm: least t admitting hermitian rho, tau on G with
// rho, tau <= t on units and [[rho, phi], [phi*, tau]] positive definite
// on G x I2
struct BgResult {
  double value = 0.0;
  ProductI2 prod;
  GFunction f_ext;  // the completed function on G x I2
  SdpResult sdp;
};
BgResult bg_norm_full(const GFunction& phi, const NormOptions& opt = {});
double bg_norm(const GFunction& phi, const NormOptions& opt = {});

// cb norm of the entrywise (Schur) multiplier by a fixed matrix
double schur_cb_norm(const Mat& m, const NormOptions& opt = {});

// multiplier cb norm bounds: upper from fiberwise Schur symbols, lower from
// ascent over the reduced norm ratio
NormInterval cb_norm_interval(const GFunction& phi, const NormOptions& opt = {});

// Fourier algebra norm bounds: inf of sum ||f_n|| ||g_n|| over finite
// families with phi = sum (f_n, g_n); upper bounds come from explicit
// families, the lower bound from the Fourier-Stieltjes norm
NormInterval a1_norm_interval(const GFunction& phi, const NormOptions& opt = {});

}  // namespace gha
