#include "hppp/denoiser.hpp"

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <csignal>
#include <random>
#include <sstream>
#include <thread>

#include "hppp/imaging.hpp"
#include "hppp/primal_dual.hpp"
#include "hppp/trace.hpp"

namespace hppp {

std::vector<double> gaussian_denoiser_taps(double sigma_psf) {
  if (!(sigma_psf > 0.0) || !std::isfinite(sigma_psf))
    throw std::invalid_argument("gaussian_conv: sigma_psf must be positive");
  const double sh = sigma_psf / std::sqrt(2.0);
  const int r = static_cast<int>(std::ceil(3.0 * sh));
  std::vector<double> h(2 * r + 1);
  double sum = 0.0;
  for (int m = -r; m <= r; ++m) sum += h[m + r] = std::exp(-(m * m) / (2.0 * sh * sh));
  for (double& v : h) v /= sum;
  // Self-convolution: the symbol becomes |h^(w)|^2.
  std::vector<double> taps(4 * r + 1, 0.0);
  for (int a = 0; a <= 2 * r; ++a)
    for (int b = 0; b <= 2 * r; ++b) taps[a + b] += h[a] * h[b];
  return taps;
}

Image separable_periodic_filter(const Image& x, const std::vector<double>& taps) {
  const Eigen::Index m = x.rows(), n = x.cols();
  const Eigen::Index r = static_cast<Eigen::Index>(taps.size() / 2);
  auto wrap = [](Eigen::Index i, Eigen::Index len) {
    const Eigen::Index q = i % len;
    return q < 0 ? q + len : q;
  };
  Image tmp = Image::Zero(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double acc = 0.0;
      for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(taps.size()); ++t)
        acc += taps[t] * x(i, wrap(j + t - r, n));
      tmp(i, j) = acc;
    }
  Image out = Image::Zero(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(taps.size()); ++t)
      out.row(i) += taps[t] * tmp.row(wrap(i + t - r, m));
  return out;
}

Denoiser Denoiser::gaussian_conv(double sigma_psf, double sigma) {
  auto taps = std::make_shared<const std::vector<double>>(gaussian_denoiser_taps(sigma_psf));
  Denoiser d(Kind::GaussianConv, sigma, sigma_psf, {},
             [taps](const Image& x) { return separable_periodic_filter(x, *taps); });
  d.verify_residual_nonexpansive();
  return d;
}

Denoiser Denoiser::shrink(double alpha, double sigma) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("shrink: alpha must lie in [0,1]");
  Denoiser d(Kind::Shrink, sigma, alpha, {}, [alpha](const Image& x) { return Image(alpha * x); });
  d.verify_residual_nonexpansive();
  return d;
}

Denoiser Denoiser::external(std::string command, double sigma) {
  if (command.empty()) throw std::invalid_argument("external denoiser: empty command");
  std::string cmd = command;
  return Denoiser(Kind::External, sigma, 0.0, std::move(command),
                  [cmd](const Image& x) { return run_external_filter(cmd, x); });
}

std::string Denoiser::describe() const {
  switch (kind_) {
    case Kind::GaussianConv:
      return "gaussian:" + format_real(parameter_);
    case Kind::Shrink:
      return "shrink:" + format_real(parameter_);
    case Kind::External:
      return "external:" + command_;
  }
  return {};
}

void Denoiser::verify_residual_nonexpansive() const {
  const Denoiser& self = *this;
  const LinearOp<Image, Image> R{[&self](const Image& x) { return self.residual(x); },
                                 [&self](const Image& x) { return self.residual(x); }};
  const double r = estimate_norm(R, 32, 32, 200, 1e-10, 0x5eed);
  if (r > 1.0 + 1e-6)
    throw std::invalid_argument("denoiser residual is expansive: ||R|| = " + format_real(r));
}

DenoiserReport check_denoiser_assumptions(const Denoiser& d, Eigen::Index rows, Eigen::Index cols,
                                          int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("check_denoiser_assumptions: n_samples >= 1");
  DenoiserReport rep;
  std::uint64_t stream = derive_seed(seed, "denoiser-check");
  auto next_image = [&] {
    stream = derive_seed(stream, "next");
    return random_image(rows, cols, stream);
  };
  for (int i = 0; i < n_samples; ++i) {
    const Image x = next_image();
    const Image z = next_image();
    const Image dx = d(x);
    for (double c : {0.5, 2.0, 10.0}) {
      const Image diff = d(Image(c * x)) - c * dx;
      rep.homogeneity_err = std::max(rep.homogeneity_err, norm(diff));
    }
    const double lhs = inner(d.residual(x), z);
    const double rhs = inner(x, d.residual(z));
    rep.symmetry_err = std::max(rep.symmetry_err, std::abs(lhs - rhs));
  }
  const LinearOp<Image, Image> R{[&d](const Image& x) { return d.residual(x); },
                                 [&d](const Image& x) { return d.residual(x); }};
  rep.residual_norm = estimate_norm(R, rows, cols, 500, 1e-12, derive_seed(seed, "power"));
  return rep;
}

Image run_external_filter(const std::string& command, const Image& x) {
  std::ostringstream pgm;
  write_pgm(pgm, x);
  const std::string payload = pgm.str();

  int to_child[2], from_child[2];
  if (pipe(to_child) != 0) throw DenoiserError("external denoiser: pipe failed");
  if (pipe(from_child) != 0) {
    close(to_child[0]);
    close(to_child[1]);
    throw DenoiserError("external denoiser: pipe failed");
  }
  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) close(fd);
    throw DenoiserError("external denoiser: fork failed");
  }
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);

  // The writer runs on its own thread so a child that streams output
  // before consuming all input cannot deadlock us.
  std::thread writer([fd = to_child[1], &payload] {
    std::signal(SIGPIPE, SIG_IGN);
    std::size_t off = 0;
    while (off < payload.size()) {
      const ssize_t n = write(fd, payload.data() + off, payload.size() - off);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) break;
      off += static_cast<std::size_t>(n);
    }
    close(fd);
  });

  std::string output;
  char buf[65536];
  while (true) {
    const ssize_t n = read(from_child[0], buf, sizeof(buf));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  close(from_child[0]);
  writer.join();

  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw DenoiserError("external denoiser '" + command + "' failed with status " +
                        std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1));
  std::istringstream in(output);
  Image out;
  try {
    out = read_pgm(in);
  } catch (const ImageIoError& e) {
    throw DenoiserError(std::string("external denoiser produced bad output: ") + e.what());
  }
  if (out.rows() != x.rows() || out.cols() != x.cols())
    throw DenoiserError("external denoiser changed the image shape");
  return out;
}

}  // namespace hppp
