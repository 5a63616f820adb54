#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "hppp/grared.hpp"
#include "hppp/prox.hpp"
#include "hppp/restore.hpp"
#include "hppp/toy_saddle.hpp"

namespace hppp::cli {
namespace {

using TvPoint = PrimalDualPoint<Image, DualField>;

Image normal_image(Eigen::Index m, Eigen::Index n, std::mt19937_64& rng, double sd = 1.0) {
  std::normal_distribution<double> g(0.0, sd);
  Image x(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = g(rng);
  return x;
}

DualField normal_field(Eigen::Index m, Eigen::Index n, std::mt19937_64& rng, double sd = 1.0) {
  return {normal_image(m, n, rng, sd), normal_image(m, n, rng, sd)};
}

CheckLine upper(std::string name, std::string measure, double value, double tol) {
  return {std::move(name), std::move(measure), value, tol, value <= tol};
}

std::vector<CheckLine> adjoint_suite(std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, "check-adjoint"));
  double worst = 0.0;
  for (auto [m, n] : {std::pair{4, 4}, std::pair{8, 8}, std::pair{33, 17}})
    for (int t = 0; t < 100; ++t) {
      const Image x = normal_image(m, n, rng);
      const DualField p = normal_field(m, n, rng);
      worst = std::max(worst, std::abs(inner(grad(x), p) + inner(x, div(p))));
    }
  return {upper("adjoint.grad-div", "max_residual", worst, 1e-10)};
}

std::vector<CheckLine> mfne_suite(std::uint64_t seed) {
  std::vector<CheckLine> out;
  {
    std::mt19937_64 rng(derive_seed(seed, "check-mfne-toy"));
    std::uniform_real_distribution<double> U(-10.0, 10.0);
    const double v = check_mfne([](const ToyPoint& u) { return toy_T(u); }, toy_preconditioner(),
                                [&] { return ToyPoint{U(rng), U(rng)}; }, 100);
    out.push_back(upper("mfne.toy", "max_violation", v, 1e-8));
  }
  {
    std::mt19937_64 rng(derive_seed(seed, "check-mfne-tv"));
    const Psf psf = make_gaussian_psf(1.6);
    const Image y = convolve_psf(random_image(16, 16, derive_seed(seed, "check-mfne-image")), psf);
    const double nk = estimate_norm(gradient_op(), 16, 16, 500, 1e-12, derive_seed(seed, "norm"));
    const Preconditioner<Image, DualField> P(1.0 / nk, 1.0 / nk, gradient_op(), nk);
    const SaddleProblem<Image, DualField> sp{deblur_resolvent(psf, y),
                                             linf_ball_resolvent(0.05, DualProjection::Standard),
                                             gradient_op(), 2.0};
    const double v = check_mfne([&](const TvPoint& u) { return cp_step(sp, P, u); }, P,
                                [&] { return TvPoint{normal_image(16, 16, rng), normal_field(16, 16, rng, 0.1)}; },
                                100);
    out.push_back(upper("mfne.tv-deblur-16x16", "max_violation", v, 1e-8));
  }
  return out;
}

std::vector<CheckLine> prox_suite(std::uint64_t seed) {
  std::vector<CheckLine> out;
  std::mt19937_64 rng(derive_seed(seed, "check-prox"));
  std::uniform_real_distribution<double> U(0.1, 5.0);

  // FFT resolvent against a dense solve; the matrix is assembled column by
  // column from direct (spatial) convolution of unit images.
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Image k = normal_image(3, 3, rng).abs();
    const Psf psf = make_custom_psf(k / k.sum());
    const Image y = normal_image(8, 8, rng), xt = normal_image(8, 8, rng);
    const double lambda = U(rng), tau = U(rng);
    Eigen::MatrixXd A(64, 64);
    for (Eigen::Index c = 0; c < 64; ++c) {
      Image e = Image::Zero(8, 8);
      e(c / 8, c % 8) = 1.0;
      const Image col = convolve_psf(e, psf, ConvolutionMode::Direct);
      for (Eigen::Index r = 0; r < 64; ++r) A(r, c) = col(r / 8, r % 8);
    }
    auto flat = [](const Image& x) {
      Eigen::VectorXd v(64);
      for (Eigen::Index r = 0; r < 64; ++r) v(r) = x(r / 8, r % 8);
      return v;
    };
    const Eigen::MatrixXd H = Eigen::MatrixXd::Identity(64, 64) + tau * lambda * A.transpose() * A;
    const Eigen::VectorXd ref = H.ldlt().solve(flat(xt) + tau * lambda * A.transpose() * flat(y));
    const Image got = prox_deblur_fft(DeblurData::make(psf, y, lambda, tau), xt);
    worst = std::max(worst, (flat(got) - ref).cwiseAbs().maxCoeff());
  }
  out.push_back(upper("prox.fft-vs-dense", "max_abs_diff", worst, 1e-8));

  double idem = 0.0;
  for (int t = 0; t < 100; ++t) {
    const DualField p = normal_field(12, 9, rng, 2.0);
    const double beta = U(rng) * 0.1;
    const DualField q = project_linf_ball(p, beta);
    idem = std::max(idem, norm(DualField(project_linf_ball(q, beta) - q)));
  }
  out.push_back(upper("prox.linf-idempotent", "max_diff", idem, 1e-12));

  const Image y = normal_image(16, 16, rng);
  const Image mask = make_bernoulli_mask(16, 16, 0.5, derive_seed(seed, "check-mask")).grid;
  const auto deblur = deblur_resolvent(make_gaussian_psf(1.6), y);
  const auto inpaint = inpaint_resolvent(mask, y);
  const auto ball = linf_ball_resolvent(0.01, DualProjection::Standard);
  double ex_deblur = -1.0, ex_inpaint = -1.0, ex_ball = -1.0, ex_toy = -1.0;
  for (int t = 0; t < 100; ++t) {
    const Image a = normal_image(16, 16, rng), b = normal_image(16, 16, rng);
    const double dab = norm(Image(a - b));
    ex_deblur = std::max(ex_deblur, norm(Image(deblur(a, 1.14) - deblur(b, 1.14))) - dab);
    ex_inpaint = std::max(ex_inpaint, norm(Image(inpaint(a, 0.57) - inpaint(b, 0.57))) - dab);
    const DualField p = normal_field(16, 16, rng, 0.02), q = normal_field(16, 16, rng, 0.02);
    ex_ball = std::max(ex_ball, norm(DualField(ball(p, 0.57) - ball(q, 0.57))) - norm(DualField(p - q)));
    const double u = 10.0 * a(0, 0), v = 10.0 * b(0, 0);
    ex_toy = std::max(ex_toy, std::abs(toy_prox_f(u, 1.0) - toy_prox_f(v, 1.0)) - std::abs(u - v));
    ex_toy = std::max(ex_toy, std::abs(toy_prox_gstar(u, 1.0) - toy_prox_gstar(v, 1.0)) - std::abs(u - v));
  }
  out.push_back(upper("prox.nonexpansive-deblur", "max_expansion", ex_deblur, 1e-10));
  out.push_back(upper("prox.nonexpansive-inpaint", "max_expansion", ex_inpaint, 1e-10));
  out.push_back(upper("prox.nonexpansive-linf", "max_expansion", ex_ball, 1e-10));
  out.push_back(upper("prox.nonexpansive-toy", "max_expansion", ex_toy, 1e-10));
  return out;
}

std::vector<CheckLine> denoiser_suite(std::uint64_t seed) {
  std::vector<CheckLine> out;
  for (const Denoiser& d : {Denoiser::gaussian_conv(1.0), Denoiser::shrink(0.5)}) {
    const DenoiserReport r = check_denoiser_assumptions(d, 32, 32, 10, derive_seed(seed, "check-denoiser"));
    const std::string base = "denoiser." + d.describe();
    out.push_back(upper(base + ".homogeneity", "err", r.homogeneity_err, 1e-10));
    out.push_back(upper(base + ".symmetry", "err", r.symmetry_err, 1e-10));
    out.push_back(upper(base + ".residual-norm", "norm", r.residual_norm, 1.0 + 1e-6));
  }
  return out;
}

std::vector<CheckLine> drs_suite(std::uint64_t seed) {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 5; ++i) {
    std::mt19937_64 rng(derive_seed(seed + i, "check-drs"));
    const Psf psf = make_gaussian_psf(1.6);
    const auto prox = deblur_resolvent(psf, convolve_psf(normal_image(16, 16, rng), psf));
    const Denoiser D = Denoiser::gaussian_conv(1.0);
    const Image x0 = normal_image(16, 16, rng), y0 = normal_image(16, 16, rng);
    GraredConfig c;
    c.tau = 1.0;
    c.s = 1.0;
    c.lambda = 20.0;
    c.n_iters = 50;
    std::vector<Image> w_p3;
    IterationOptions<ImagePair> o;
    o.observer = [&w_p3](long, const ImagePair& u) { w_p3.push_back(u.x - u.y); };
    grared_p3(prox, D, c, [](long) { return 1.0; }, x0, y0, o);
    const auto w = drs_oracle(prox, D, c.lambda, Image(x0 - y0), 50);
    for (std::size_t k = 0; k < w.size(); ++k) worst = std::max(worst, (w[k] - w_p3[k]).abs().maxCoeff());
  }
  return {upper("drs-equiv.p3-vs-drs", "max_deviation", worst, 1e-12)};
}

std::vector<CheckLine> rate_suite(std::uint64_t seed) {
  std::vector<CheckLine> out;
  ToyConfig c;
  c.anchor = {12.0, 10.0};
  c.init = {-6.0, 6.0};
  c.mu = Schedule::min_two_over_k();
  c.n_iters = 1000;
  const ToyRun r = toy_run(c, ToyAlgorithm::Hppp);
  out.push_back(upper("rate.toy", "slope", rate_fit(r.trace, TraceField::GapNorm, 100, 1000).slope, -0.8));

  const Image clean = read_pgm(default_data_dir() / "images" / "camera.pgm").block(96, 96, 64, 64);
  const Image mask = make_bernoulli_mask(64, 64, 0.5, derive_seed(seed, "mask")).grid;
  const Image obs = mask * add_wgn(clean, 0.01, derive_seed(seed, "noise"));
  GraredConfig g;
  g.tau = 10.0;
  g.s = 0.1;
  g.lambda = 5.0;
  g.schedule = Schedule::min_two_over_k();
  g.anchor = ImagePair{obs, Image::Zero(64, 64)};
  g.n_iters = 1000;
  const GraredResult res =
      grared_hp3(inpaint_resolvent(mask, obs), Denoiser::gaussian_conv(1.0), g, obs, Image::Zero(64, 64));
  out.push_back(
      upper("rate.grared-hp3-inpaint-64", "slope", rate_fit(res.trace, TraceField::GapNorm, 100, 1000).slope, -0.8));
  return out;
}

}  // namespace

const std::vector<std::string>& check_suite_names() {
  static const std::vector<std::string> names{"adjoint", "mfne", "prox", "denoiser", "drs-equiv", "rate", "all"};
  return names;
}

std::vector<CheckLine> run_check_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "adjoint") return adjoint_suite(seed);
  if (suite == "mfne") return mfne_suite(seed);
  if (suite == "prox") return prox_suite(seed);
  if (suite == "denoiser") return denoiser_suite(seed);
  if (suite == "drs-equiv") return drs_suite(seed);
  if (suite == "rate") return rate_suite(seed);
  if (suite == "all") {
    std::vector<CheckLine> all;
    for (const auto& s : check_suite_names()) {
      if (s == "all") continue;
      auto part = run_check_suite(s, seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown check suite '" + suite + "'");
}

}  // namespace hppp::cli
