#pragma once

#include "hppp/denoiser.hpp"
#include "hppp/fixed_point.hpp"
#include "hppp/primal_dual.hpp"
#include "hppp/schedule.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace hppp {

/// Primal-dual point with K = I: both components are images.
using ImagePair = PrimalDualPoint<Image, Image>;

struct GraredConfig {
  double tau = 1.0;
  double s = 1.0;
  double lambda = 1.0;
  /// Anchor coefficient mu_k for HP3, relaxation lambda_k for P3.
  Schedule schedule = Schedule::inverse_shift(1.0, 2);
  /// (x_a, y_a); HP3 only. Defaults to (x0, 0) when absent.
  std::optional<ImagePair> anchor;
  long n_iters = 100;

  /// Throws std::invalid_argument unless tau, s, lambda > 0, tau s <= 1
  /// (within 1e-9) and n_iters >= 1.
  void validate() const;
};

struct GraredResult {
  ImagePair u;
  RunTrace trace;
  long steps = 0;
};

/// ||(wx, wy)||_M for K = I: sqrt(|wx|^2/tau - 2<wx, wy> + |wy|^2/s).
double grared_seminorm(double tau, double s, const ImagePair& w);

/// GraRED-HP3. Per iteration, with R = I - D:
///   d      = prox_f(x - tau y, tau lambda)
///   x+     = mu_k x_a + (1 - mu_k) d
///   v      = R(s(2d - x) + y)
///   y+     = mu_{k+1} y_a + (1 - mu_{k+1}) v
/// The x-line uses mu_k and the y-line mu_{k+1}. fp_residual is
/// ||(d, v) - (x, y)||.
GraredResult grared_hp3(const Resolvent<Image>& prox_f, const Denoiser& D, const GraredConfig& cfg,
                        const Image& x0, const Image& y0,
                        const IterationOptions<ImagePair>& opts = {});

/// GraRED-P3:
///   d  = prox_f(x - tau y, tau lambda)
///   x+ = lambda_k d + (1 - lambda_k) x
///   y+ = lambda_k R(y + s(2d - x)) + (1 - lambda_k) y
GraredResult grared_p3(const Resolvent<Image>& prox_f, const Denoiser& D, const GraredConfig& cfg,
                       const Image& x0, const Image& y0,
                       const IterationOptions<ImagePair>& opts = {});

/// Same as above with an arbitrary coefficient sequence lambda_k in [0, 2]
/// (cfg.schedule is ignored).
GraredResult grared_p3(const Resolvent<Image>& prox_f, const Denoiser& D, const GraredConfig& cfg,
                       const std::function<double(long)>& relax, const Image& x0,
                       const Image& y0, const IterationOptions<ImagePair>& opts = {});

/// Douglas-Rachford form of PnP-ADMM,
///   w+ = w + D(2 prox(w) - w) - prox(w),  prox = prox_f(., lambda).
/// Returns w^0 .. w^n.
std::vector<Image> drs_oracle(const Resolvent<Image>& prox_f, const Denoiser& D, double lambda,
                              const Image& w0, long n_iters);

struct AdmmState {
  Image v;
  Image u_bar;
};

/// PnP-ADMM
///   z  = D(v - u_bar),  v+ = prox(z + u_bar),  u_bar+ = u_bar + z - v+
/// started from v = prox(w0), u_bar = w0 - v. Returns states 0 .. n.
std::vector<AdmmState> pnp_admm(const Resolvent<Image>& prox_f, const Denoiser& D, double lambda,
                                const Image& w0, long n_iters);

}  // namespace hppp
