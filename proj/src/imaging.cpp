#include "hppp/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace hppp {

Psf make_gaussian_psf(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("make_gaussian_psf: sigma must be positive");
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  Image w(2 * r + 1, 2 * r + 1);
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j)
      w(i + r, j + r) = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
  w /= w.sum();
  return {Psf::Kind::Gaussian, sigma, std::move(w)};
}

Psf make_uniform_psf(int size) {
  if (size < 1 || size % 2 == 0)
    throw std::invalid_argument("make_uniform_psf: size must be a positive odd integer");
  Image w = Image::Constant(size, size, 1.0 / (static_cast<double>(size) * size));
  return {Psf::Kind::Uniform, static_cast<double>(size), std::move(w)};
}

Psf make_delta_psf() { return {Psf::Kind::Delta, 0.0, Image::Ones(1, 1)}; }

Psf make_custom_psf(Image weights) {
  if (weights.rows() % 2 == 0 || weights.cols() % 2 == 0)
    throw std::invalid_argument("make_custom_psf: kernel dimensions must be odd");
  return {Psf::Kind::Custom, 0.0, std::move(weights)};
}

namespace {

Eigen::Index wrap(Eigen::Index i, Eigen::Index n) {
  const Eigen::Index r = i % n;
  return r < 0 ? r + n : r;
}

void check_nonempty(const Image& x, const char* who) {
  if (x.rows() < 1 || x.cols() < 1) throw std::invalid_argument(std::string(who) + ": empty image");
}

}  // namespace

Image embed_psf(const Psf& k, Eigen::Index rows, Eigen::Index cols) {
  Image e = Image::Zero(rows, cols);
  const Eigen::Index rr = k.radius_rows(), rc = k.radius_cols();
  for (Eigen::Index a = 0; a < k.weights.rows(); ++a)
    for (Eigen::Index b = 0; b < k.weights.cols(); ++b)
      e(wrap(a - rr, rows), wrap(b - rc, cols)) += k.weights(a, b);
  return e;
}

Image circshift(const Image& x, Eigen::Index di, Eigen::Index dj) {
  Image out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out(wrap(i + di, x.rows()), wrap(j + dj, x.cols())) = x(i, j);
  return out;
}

namespace {

Image convolve_direct(const Image& x, const Psf& k, bool adjoint) {
  const Eigen::Index m = x.rows(), n = x.cols();
  const Eigen::Index rr = k.radius_rows(), rc = k.radius_cols();
  Image out = Image::Zero(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double acc = 0.0;
      for (Eigen::Index a = 0; a < k.weights.rows(); ++a) {
        const Eigen::Index di = a - rr;
        const Eigen::Index si = wrap(adjoint ? i + di : i - di, m);
        for (Eigen::Index b = 0; b < k.weights.cols(); ++b) {
          const Eigen::Index dj = b - rc;
          acc += k.weights(a, b) * x(si, wrap(adjoint ? j + dj : j - dj, n));
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

Image convolve_fft(const Image& x, const Psf& k, bool adjoint) {
  Fft2<double> fft;
  const Spectrum kf = fft.forward(embed_psf(k, x.rows(), x.cols()));
  Spectrum xf = fft.forward(x);
  if (adjoint)
    xf *= kf.conjugate();
  else
    xf *= kf;
  return fft.inverse_real(std::move(xf));
}

}  // namespace

Image convolve_psf(const Image& x, const Psf& k, ConvolutionMode mode) {
  check_nonempty(x, "convolve_psf");
  return mode == ConvolutionMode::Fft ? convolve_fft(x, k, false) : convolve_direct(x, k, false);
}

Image correlate_psf(const Image& y, const Psf& k, ConvolutionMode mode) {
  check_nonempty(y, "correlate_psf");
  return mode == ConvolutionMode::Fft ? convolve_fft(y, k, true) : convolve_direct(y, k, true);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Mask make_bernoulli_mask(Eigen::Index rows, Eigen::Index cols, double p_missing,
                         std::uint64_t seed) {
  if (!(p_missing > 0.0 && p_missing < 1.0))
    throw std::invalid_argument("make_bernoulli_mask: probability must lie in (0,1)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Image grid(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) grid(i, j) = unif(rng) < p_missing ? 0.0 : 1.0;
  Mask m;
  m.kind = Mask::Kind::Bernoulli;
  m.missing_probability = p_missing;
  m.seed = seed;
  m.grid = std::move(grid);
  return m;
}

Mask load_mask(const std::filesystem::path& path) {
  const Image img = read_pgm(path);
  Mask m;
  m.kind = Mask::Kind::File;
  m.path = path.string();
  // read_pgm maps 8-bit v to v/255; v >= 128 is observed.
  m.grid = (img * 255.0 >= 127.5).cast<double>();
  m.missing_probability = 1.0 - m.grid.mean();
  return m;
}

Image add_wgn(const Image& x, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("add_wgn: sigma must be nonnegative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Image out = x;
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) += sigma * normal(rng);
  return out;
}

double psnr(const Image& x, const Image& reference, double peak) {
  if (x.rows() != reference.rows() || x.cols() != reference.cols())
    throw std::invalid_argument("psnr: shape mismatch");
  if (!(peak > 0.0)) throw std::invalid_argument("psnr: peak must be positive");
  const double mse = (x - reference).square().mean();
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

Image random_image(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Image out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = unif(rng);
  return out;
}

std::vector<std::uint8_t> quantize8(const Image& x) {
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(x.size()));
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      bytes[idx++] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(x(i, j), 0.0, 1.0)));
  return bytes;
}

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n' && c != '\r') {
      }
      if (!tok.empty()) return tok;
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

long parse_header_int(std::istream& in, const char* what) {
  const std::string tok = next_token(in);
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ImageIoError(std::string("PGM: bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

Image read_pgm(std::istream& in) {
  if (next_token(in) != "P5") throw ImageIoError("PGM: expected binary P5 magic");
  const long width = parse_header_int(in, "width");
  const long height = parse_header_int(in, "height");
  const long maxval = parse_header_int(in, "maxval");
  if (maxval > 255) throw ImageIoError("PGM: only 8-bit (maxval <= 255) files are supported");
  std::vector<unsigned char> buf(static_cast<std::size_t>(width * height));
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size()))
    throw ImageIoError("PGM: truncated pixel data");
  Image img(height, width);
  std::size_t idx = 0;
  for (long i = 0; i < height; ++i)
    for (long j = 0; j < width; ++j) img(i, j) = buf[idx++] / static_cast<double>(maxval);
  return img;
}

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open '" + path.string() + "'");
  try {
    return read_pgm(in);
  } catch (const ImageIoError& e) {
    throw ImageIoError(path.string() + ": " + e.what());
  }
}

void write_pgm(std::ostream& out, const Image& x) {
  const auto bytes = quantize8(x);
  out << "P5\n" << x.cols() << ' ' << x.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageIoError("PGM: write failed");
}

void write_pgm(const std::filesystem::path& path, const Image& x) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError("cannot create '" + path.string() + "'");
  write_pgm(out, x);
}

}  // namespace hppp
