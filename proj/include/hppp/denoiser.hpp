#pragma once

#include "hppp/image.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hppp {

class DenoiserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Denoiser D_sigma with residual R = I - D_sigma.
///
/// The built-in kinds are linear with a symmetric Jacobian and are
/// homogeneous of degree one, and their residual is nonexpansive:
///  - GaussianConv(sigma_psf): periodic convolution with a Gaussian of the
///    given width, realized as h * h for a truncated Gaussian h of width
///    sigma_psf / sqrt(2). Its DFT symbol is |h^|^2, which lies in [0, 1].
///  - Shrink(alpha): D(x) = alpha x, alpha in [0, 1].
/// External(command) pipes the image as PGM through a shell command and
/// carries no such guarantees.
class Denoiser {
 public:
  enum class Kind { GaussianConv, Shrink, External };

  static Denoiser gaussian_conv(double sigma_psf, double sigma = 0.0);
  static Denoiser shrink(double alpha, double sigma = 0.0);
  static Denoiser external(std::string command, double sigma = 0.0);

  Image operator()(const Image& x) const { return apply_(x); }
  Image residual(const Image& x) const { return x - apply_(x); }

  Kind kind() const { return kind_; }
  double sigma() const { return sigma_; }
  /// sigma_psf, alpha, or 0 for External.
  double parameter() const { return parameter_; }
  const std::string& command() const { return command_; }
  std::string describe() const;

 private:
  Denoiser(Kind kind, double sigma, double parameter, std::string command,
           std::function<Image(const Image&)> fn)
      : kind_(kind),
        sigma_(sigma),
        parameter_(parameter),
        command_(std::move(command)),
        apply_(std::move(fn)) {}

  void verify_residual_nonexpansive() const;

  Kind kind_;
  double sigma_;
  double parameter_;
  std::string command_;
  std::function<Image(const Image&)> apply_;
};

/// Symmetric 1D taps (centered) of the GaussianConv denoiser.
std::vector<double> gaussian_denoiser_taps(double sigma_psf);

/// Separable periodic convolution with symmetric 1D taps along both axes.
Image separable_periodic_filter(const Image& x, const std::vector<double>& taps);

struct DenoiserReport {
  double homogeneity_err = 0.0;  // max ||D(cx) - c D(x)||, c in {0.5, 2, 10}
  double symmetry_err = 0.0;     // max |<R x, z> - <x, R z>|
  double residual_norm = 0.0;    // power-iteration estimate of ||R||
};

DenoiserReport check_denoiser_assumptions(const Denoiser& d, Eigen::Index rows, Eigen::Index cols,
                                          int n_samples, std::uint64_t seed);

/// Runs `command` under /bin/sh with the image as PGM on stdin and parses a
/// PGM from stdout. Nonzero exit status raises DenoiserError.
Image run_external_filter(const std::string& command, const Image& x);

}  // namespace hppp
