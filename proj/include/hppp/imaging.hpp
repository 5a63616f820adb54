#pragma once

#include "hppp/fft2.hpp"
#include "hppp/image.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hppp {

/// Raised for unreadable, unwritable or malformed image files.
class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Point spread functions

/// Odd-sized, unit-sum convolution kernel. The center tap sits at
/// (rows/2, cols/2).
struct Psf {
  enum class Kind { Gaussian, Uniform, Delta, Custom };

  Kind kind = Kind::Delta;
  double parameter = 0.0;  // sigma for Gaussian, edge length for Uniform
  Image weights = Image::Ones(1, 1);

  Eigen::Index radius_rows() const { return weights.rows() / 2; }
  Eigen::Index radius_cols() const { return weights.cols() / 2; }
};

/// Gaussian truncated at radius ceil(3 sigma), renormalized to unit sum.
Psf make_gaussian_psf(double sigma);
/// size x size box filter; size must be odd.
Psf make_uniform_psf(int size);
Psf make_delta_psf();
/// Wraps arbitrary odd-sized weights. Weights are used as given (no
/// normalization), which the dense-oracle tests rely on.
Psf make_custom_psf(Image weights);

/// Kernel embedded into an rows x cols periodic grid with the center tap at
/// index (0,0). Taps falling outside the grid wrap around and accumulate.
Image embed_psf(const Psf& k, Eigen::Index rows, Eigen::Index cols);

enum class ConvolutionMode { Fft, Direct };

/// Periodic convolution (k * x)_i = sum_m k_m x_{i-m}.
Image convolve_psf(const Image& x, const Psf& k, ConvolutionMode mode = ConvolutionMode::Fft);
/// Adjoint of convolve_psf (periodic correlation), i.e. A^T y.
Image correlate_psf(const Image& y, const Psf& k, ConvolutionMode mode = ConvolutionMode::Fft);

/// Circular shift: out(i, j) = x(i - di, j - dj).
Image circshift(const Image& x, Eigen::Index di, Eigen::Index dj);

// ---------------------------------------------------------------------------
// Masks, noise, quality

/// Binary observation mask: 1 = observed, 0 = missing.
struct Mask {
  enum class Kind { Bernoulli, File };

  Kind kind = Kind::Bernoulli;
  double missing_probability = 0.0;
  std::uint64_t seed = 0;
  std::string path;
  Image grid;

  double observed_fraction() const { return grid.mean(); }
};

/// Each pixel is missing independently with probability p_missing.
Mask make_bernoulli_mask(Eigen::Index rows, Eigen::Index cols, double p_missing, std::uint64_t seed);
/// Reads a PGM and thresholds at 128 (>= 128 observed).
Mask load_mask(const std::filesystem::path& path);

/// Adds i.i.d. N(0, sigma^2) noise; deterministic per seed.
Image add_wgn(const Image& x, double sigma, std::uint64_t seed);

/// 10 log10(peak^2 / MSE); returns +infinity when MSE is zero.
double psnr(const Image& x, const Image& reference, double peak = 1.0);

/// Derives an independent sub-seed from (seed, purpose) via FNV-1a over the
/// tag followed by a splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose);

/// Uniform [0,1) image, deterministic per seed.
Image random_image(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Files

/// round(255 * clamp(v, 0, 1)) per pixel.
std::vector<std::uint8_t> quantize8(const Image& x);

Image read_pgm(const std::filesystem::path& path);
Image read_pgm(std::istream& in);
void write_pgm(const std::filesystem::path& path, const Image& x);
void write_pgm(std::ostream& out, const Image& x);

}  // namespace hppp
