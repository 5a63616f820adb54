#include "hppp/prox.hpp"

#include <memory>

namespace hppp {

DeblurData DeblurData::make(const Psf& kernel, const Image& observed, double lambda, double tau) {
  if (!(lambda >= 0.0) || !(tau > 0.0))
    throw std::invalid_argument("DeblurData: need lambda >= 0 and tau > 0");
  Fft2<double> fft;
  const Spectrum kf = fft.forward(embed_psf(kernel, observed.rows(), observed.cols()));
  const Spectrum yf = fft.forward(observed);
  DeblurData d;
  d.numerator_base = yf * kf.conjugate();
  d.kernel_power = kf.abs2();
  d.lambda = lambda;
  d.tau = tau;
  return d;
}

Image prox_deblur_fft(const DeblurData& d, const Image& x_tilde, double t) {
  if (x_tilde.rows() != d.kernel_power.rows() || x_tilde.cols() != d.kernel_power.cols())
    throw std::invalid_argument("prox_deblur_fft: shape mismatch");
  Fft2<double> fft;
  Spectrum z = fft.forward(x_tilde);
  z = (t * d.numerator_base + z) / (t * d.kernel_power + 1.0).cast<std::complex<double>>();
  return fft.inverse_real(std::move(z));
}

Image prox_deblur_fft(const DeblurData& d, const Image& x_tilde) {
  return prox_deblur_fft(d, x_tilde, d.tau * d.lambda);
}

namespace {

Image inpaint_formula(const Image& mask, const Image& observed, double c, const Image& x_tilde) {
  if (x_tilde.rows() != mask.rows() || x_tilde.cols() != mask.cols() ||
      observed.rows() != mask.rows() || observed.cols() != mask.cols())
    throw std::invalid_argument("prox_inpaint: shape mismatch");
  return (c * mask * observed + x_tilde) / (1.0 + c * mask);
}

}  // namespace

Image prox_inpaint(const InpaintData& d, const Image& x_tilde) {
  return inpaint_formula(d.mask, d.observed, 2.0 * d.tau * d.weight, x_tilde);
}

Resolvent<Image> deblur_resolvent(const Psf& kernel, const Image& observed) {
  auto data = std::make_shared<const DeblurData>(DeblurData::make(kernel, observed, 1.0, 1.0));
  return [data](const Image& v, double t) { return prox_deblur_fft(*data, v, t); };
}

Resolvent<Image> inpaint_resolvent(const Image& mask, const Image& observed) {
  auto data = std::make_shared<const InpaintData>(InpaintData{mask, observed, 1.0, 1.0});
  return [data](const Image& v, double t) {
    return inpaint_formula(data->mask, data->observed, 2.0 * t, v);
  };
}

Resolvent<DualField> linf_ball_resolvent(double beta, DualProjection variant) {
  if (!(beta > 0.0)) throw std::invalid_argument("linf_ball_resolvent: beta must be positive");
  return [beta, variant](const DualField& p, double) { return project_linf_ball(p, beta, variant); };
}

double toy_prox_f(double x_tilde, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("toy_prox_f: tau must be positive");
  if (x_tilde >= 0.0) return x_tilde;
  if (x_tilde <= -tau) return x_tilde + tau;
  return 0.0;
}

double toy_prox_gstar(double y_tilde, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("toy_prox_gstar: s must be positive");
  return std::clamp(y_tilde - s, -1.0, 0.0);
}

}  // namespace hppp
