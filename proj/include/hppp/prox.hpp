#pragma once

#include "hppp/fft2.hpp"
#include "hppp/image.hpp"
#include "hppp/imaging.hpp"
#include "hppp/primal_dual.hpp"

#include <algorithm>
#include <stdexcept>

namespace hppp {

/// Which formula realizes the TV dual resolvent.
///  Standard: p = beta p~ / max(beta, |p~|), the projection onto
///            {max_ij |p_ij| <= beta}.
///  Unscaled: p = p~ / max(beta, |p~|), the same expression without the
///            beta numerator.
enum class DualProjection { Standard, Unscaled };

template <typename Scalar>
DualFieldT<Scalar> project_linf_ball(const DualFieldT<Scalar>& pt, Scalar beta,
                                     DualProjection variant = DualProjection::Standard) {
  if (!(beta > Scalar(0))) throw std::invalid_argument("project_linf_ball: beta must be positive");
  const ImageT<Scalar> scale = magnitude(pt).max(beta).inverse();
  DualFieldT<Scalar> out{pt.p1 * scale, pt.p2 * scale};
  if (variant == DualProjection::Standard) out *= beta;
  return out;
}

/// Cached spectra for the deblurring data resolvent
///   x = F^{-1}( (t F(y) conj F(k) + F(x~)) / (t |F(k)|^2 + 1) ),  t = tau lambda,
/// which minimizes ||x - x~||^2 / (2 tau) + (lambda/2) ||k * x - y||^2.
struct DeblurData {
  Spectrum numerator_base;  // F(y) conj(F(k))
  Image kernel_power;       // |F(k)|^2
  double lambda = 1.0;
  double tau = 1.0;

  static DeblurData make(const Psf& kernel, const Image& observed, double lambda, double tau);
};

Image prox_deblur_fft(const DeblurData& d, const Image& x_tilde);
/// Same resolvent with t supplied per call; d.lambda and d.tau are ignored.
Image prox_deblur_fft(const DeblurData& d, const Image& x_tilde, double t);

/// Pointwise data resolvent for f(x) = w ||M . x - y||^2:
///   x = (2 tau w M y + x~) / (1 + 2 tau w M).
struct InpaintData {
  Image mask;
  Image observed;
  double weight = 1.0;
  double tau = 1.0;
};

Image prox_inpaint(const InpaintData& d, const Image& x_tilde);

/// Resolvent handles for the solvers: called with t = tau * lambda, so the
/// stored weights are not applied a second time.
Resolvent<Image> deblur_resolvent(const Psf& kernel, const Image& observed);
Resolvent<Image> inpaint_resolvent(const Image& mask, const Image& observed);
Resolvent<DualField> linf_ball_resolvent(double beta, DualProjection variant);

// One-dimensional pieces for f(x) = max(-x, 0) and g*(y) = y + indicator_[-1,0](y).

/// argmin_u (u - x~)^2 / (2 tau) + max(-u, 0).
double toy_prox_f(double x_tilde, double tau);
/// clamp(y~ - s, -1, 0).
double toy_prox_gstar(double y_tilde, double s);

/// ||prox_phi(x) + prox_phi*(x) - x||, zero for a genuine Moreau pair.
template <typename T, typename F, typename G>
double moreau_check(const F& prox_phi, const G& prox_phi_star, const T& x) {
  const T r = prox_phi(x) + prox_phi_star(x) - x;
  return norm(r);
}

}  // namespace hppp
