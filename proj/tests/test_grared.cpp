#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "hppp/grared.hpp"
#include "hppp/prox.hpp"
#include "support.hpp"

using namespace hppp;

namespace {

Image camera_crop(Eigen::Index n) {
  const Image full = read_pgm(std::filesystem::path(HPPP_TEST_DATA_DIR) / "images" / "camera.pgm");
  return full.block(96, 96, n, n);
}

}  // namespace

TEST_SUITE("grared") {

TEST_CASE("built-in denoisers satisfy the structural assumptions") {
  for (const Denoiser& d : {Denoiser::gaussian_conv(1.0), Denoiser::gaussian_conv(2.5),
                            Denoiser::shrink(0.0), Denoiser::shrink(0.6), Denoiser::shrink(1.0)}) {
    const DenoiserReport r = check_denoiser_assumptions(d, 32, 32, 10, 5);
    CHECK(r.homogeneity_err <= 1e-10);
    CHECK(r.symmetry_err <= 1e-10);
    CHECK(r.residual_norm <= 1.0 + 1e-6);
  }
  CHECK_THROWS_AS(Denoiser::shrink(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Denoiser::shrink(-0.1), std::invalid_argument);
}

TEST_CASE("gaussian denoiser taps") {
  const auto taps = gaussian_denoiser_taps(1.0);
  CHECK(taps.size() % 2 == 1);
  double sum = 0.0;
  for (double t : taps) sum += t;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < taps.size(); ++i) CHECK(taps[i] == taps[taps.size() - 1 - i]);
  const Image c = Image::Constant(12, 10, 0.3);
  CHECK((separable_periodic_filter(c, taps) - c).abs().maxCoeff() <= 1e-14);
}

TEST_CASE("gaussian denoiser against its dense matrix") {
  std::mt19937_64 rng(8);
  const auto taps = gaussian_denoiser_taps(0.8);
  Image k(static_cast<Eigen::Index>(taps.size()), static_cast<Eigen::Index>(taps.size()));
  for (std::size_t i = 0; i < taps.size(); ++i)
    for (std::size_t j = 0; j < taps.size(); ++j)
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = taps[i] * taps[j];
  const Image x = testing::normal_image(10, 9, rng);
  const Eigen::MatrixXd A = testing::convolution_matrix(k, 10, 9);
  const Image ref = testing::unflatten(A * testing::flatten(x), 10, 9);
  CHECK((Denoiser::gaussian_conv(0.8)(x) - ref).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("external denoiser through a shell command") {
  std::mt19937_64 rng(1);
  const Image x = random_image(9, 7, 3);
  const Denoiser cat = Denoiser::external("cat");
  const Image y = cat(x);
  CHECK(y.rows() == 9);
  CHECK(y.cols() == 7);
  CHECK((y - x).abs().maxCoeff() <= 0.5 / 255.0 + 1e-12);
  CHECK(cat.describe().rfind("external:", 0) == 0);
  CHECK_THROWS_AS(Denoiser::external("false")(x), DenoiserError);
  CHECK_THROWS_AS(Denoiser::external("echo nonsense")(x), DenoiserError);
}

TEST_CASE("seminorm for K = I") {
  std::mt19937_64 rng(3);
  const ImagePair w{testing::normal_image(5, 5, rng), testing::normal_image(5, 5, rng)};
  const double expect = std::sqrt(squared_norm(w.x) / 0.5 - 2.0 * inner(w.x, w.y) + squared_norm(w.y) / 2.0);
  CHECK(grared_seminorm(0.5, 2.0, w) == doctest::Approx(expect).epsilon(1e-14));
  const ImagePair diag{w.x, w.x};
  CHECK(grared_seminorm(1.0, 1.0, diag) <= 1e-6);
}

TEST_CASE("config validation") {
  GraredConfig c;
  CHECK_NOTHROW(c.validate());
  c.tau = 10.0;
  c.s = 0.1;
  CHECK_NOTHROW(c.validate());
  c.s = 0.2;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  GraredConfig d;
  d.n_iters = 0;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  GraredConfig e;
  const Image z = Image::Zero(4, 4);
  CHECK_THROWS_AS(grared_hp3(inpaint_resolvent(z, z), Denoiser::shrink(0.5), e, z, Image::Zero(3, 3)),
                  std::invalid_argument);
  e.schedule = Schedule::constant(1.0);
  CHECK_THROWS_AS(grared_hp3(inpaint_resolvent(z, z), Denoiser::shrink(0.5), e, z, z),
                  std::invalid_argument);
}

TEST_CASE("hp3 with a zero residual is an anchored proximal point method") {
  std::mt19937_64 rng(4);
  const Image y = testing::normal_image(8, 8, rng);
  const Image mask = make_bernoulli_mask(8, 8, 0.5, 1).grid;
  const auto prox = inpaint_resolvent(mask, y);
  const Image x0 = testing::normal_image(8, 8, rng);
  GraredConfig c;
  c.lambda = 3.0;
  c.n_iters = 30;
  const GraredResult r = grared_hp3(prox, Denoiser::shrink(1.0), c, x0, Image::Zero(8, 8));
  Image x = x0;
  for (long k = 0; k < 30; ++k) {
    const double mu = 1.0 / static_cast<double>(k + 2);
    x = mu * x0 + (1.0 - mu) * prox(x, c.tau * c.lambda);
  }
  CHECK((r.u.x - x).abs().maxCoeff() <= 1e-14);
  CHECK(r.u.y.abs().maxCoeff() == 0.0);
}

TEST_CASE("p3 with zero relaxation does not move") {
  std::mt19937_64 rng(5);
  const Image y = testing::normal_image(8, 8, rng);
  const Image x0 = testing::normal_image(8, 8, rng);
  const Image y0 = testing::normal_image(8, 8, rng);
  GraredConfig c;
  c.n_iters = 10;
  const GraredResult r = grared_p3(inpaint_resolvent(Image::Ones(8, 8), y), Denoiser::gaussian_conv(1.0),
                                   c, [](long) { return 0.0; }, x0, y0);
  CHECK((r.u.x == x0).all());
  CHECK((r.u.y == y0).all());
  CHECK_THROWS_AS(grared_p3(inpaint_resolvent(Image::Ones(8, 8), y), Denoiser::gaussian_conv(1.0), c,
                            [](long) { return 2.5; }, x0, y0),
                  std::invalid_argument);
}

TEST_CASE("p3 with unit relaxation is douglas-rachford in w = x - y") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);
    const Image clean = testing::normal_image(16, 16, rng);
    const Psf psf = make_gaussian_psf(1.6);
    const Image obs = convolve_psf(clean, psf);
    const auto prox = deblur_resolvent(psf, obs);
    const Denoiser D = Denoiser::gaussian_conv(1.0);
    const Image x0 = testing::normal_image(16, 16, rng);
    const Image y0 = testing::normal_image(16, 16, rng);
    GraredConfig c;
    c.tau = 1.0;
    c.s = 1.0;
    c.lambda = 20.0;
    c.n_iters = 50;
    std::vector<Image> w_p3;
    IterationOptions<ImagePair> o;
    o.observer = [&w_p3](long, const ImagePair& u) { w_p3.push_back(u.x - u.y); };
    grared_p3(prox, D, c, [](long) { return 1.0; }, x0, y0, o);
    const std::vector<Image> w = drs_oracle(prox, D, c.lambda, Image(x0 - y0), 50);
    REQUIRE(w.size() == w_p3.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) worst = std::max(worst, (w[k] - w_p3[k]).abs().maxCoeff());
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("pnp-admm tracks the douglas-rachford sequence") {
  std::mt19937_64 rng(12);
  const Image obs = testing::normal_image(16, 16, rng);
  const auto prox = inpaint_resolvent(make_bernoulli_mask(16, 16, 0.5, 3).grid, obs);
  const Denoiser D = Denoiser::gaussian_conv(1.0);
  const Image w0 = testing::normal_image(16, 16, rng);
  const auto w = drs_oracle(prox, D, 5.0, w0, 40);
  const auto admm = pnp_admm(prox, D, 5.0, w0, 40);
  REQUIRE(admm.size() == w.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    worst = std::max(worst, (admm[k].v + admm[k].u_bar - w[k]).abs().maxCoeff());
    worst = std::max(worst, (admm[k].v - prox(w[k], 5.0)).abs().maxCoeff());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("hp3 inpainting drives the fixed-point residual below 1e-4") {
  const Image clean = camera_crop(64);
  const Image mask = make_bernoulli_mask(64, 64, 0.5, derive_seed(1, "mask")).grid;
  const Image obs = mask * add_wgn(clean, 0.01, derive_seed(1, "noise"));
  GraredConfig c;
  c.tau = 10.0;
  c.s = 0.1;
  c.lambda = 5.0;
  c.schedule = Schedule::inverse_shift(0.05, 2);
  c.anchor = ImagePair{obs, Image::Zero(64, 64)};
  c.n_iters = 10000;
  IterationOptions<ImagePair> o;
  o.stride = 100;
  const GraredResult r =
      grared_hp3(inpaint_resolvent(mask, obs), Denoiser::gaussian_conv(1.0), c, obs, Image::Zero(64, 64), o);
  const auto& rows = r.trace.rows();
  CHECK(rows.back().fp_residual < 1e-4);
  // Decreasing on a coarse grid.
  for (std::size_t k = 10; k < rows.size(); k += 10)
    CHECK(rows[k].fp_residual <= rows[k - 10].fp_residual);
  CHECK(psnr(r.u.x, clean) > psnr(obs, clean) + 5.0);
}

TEST_CASE("hp3 and p3 deblurring improve a 128x128 image") {
  const Image clean = camera_crop(128);
  const Psf psf = make_gaussian_psf(1.6);
  const Image obs = add_wgn(convolve_psf(clean, psf), 0.01, 3);
  const auto prox = deblur_resolvent(psf, obs);
  const Denoiser D = Denoiser::gaussian_conv(1.0);
  GraredConfig c;
  c.lambda = 20.0;
  c.n_iters = 400;
  c.anchor = ImagePair{obs, Image::Zero(128, 128)};
  const GraredResult h = grared_hp3(prox, D, c, obs, Image::Zero(128, 128));
  CHECK(psnr(h.u.x, clean) >= psnr(obs, clean) + 1.0);
  GraredConfig p = c;
  p.schedule = Schedule::constant(0.2);
  p.anchor.reset();
  const GraredResult q = grared_p3(prox, D, p, obs, Image::Zero(128, 128));
  CHECK(psnr(q.u.x, clean) >= psnr(obs, clean) + 1.0);
}

}  // TEST_SUITE
