#include "hppp/restore.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <json.hpp>

#include "hppp/fixed_point.hpp"
#include "hppp/grared.hpp"
#include "hppp/primal_dual.hpp"

#ifndef HPPP_DATA_DIR
#define HPPP_DATA_DIR "data"
#endif

namespace hppp {

std::filesystem::path default_data_dir() { return HPPP_DATA_DIR; }

namespace {

struct TaskName {
  std::string_view name;
  RestoreTask task;
};
struct AlgoName {
  std::string_view name;
  RestoreAlgo algo;
};

constexpr TaskName kTasks[] = {{"gauss16", RestoreTask::DeblurGaussian},
                               {"uniform9", RestoreTask::DeblurUniform},
                               {"bernoulli50", RestoreTask::InpaintBernoulli},
                               {"character", RestoreTask::InpaintCharacter}};
constexpr AlgoName kAlgos[] = {{"cp", RestoreAlgo::Cp},
                               {"ppp", RestoreAlgo::Ppp},
                               {"hppp", RestoreAlgo::Hppp},
                               {"grared-p3", RestoreAlgo::GraredP3},
                               {"grared-hp3", RestoreAlgo::GraredHp3}};

using TvPoint = PrimalDualPoint<Image, DualField>;

void check_same_shape(const Image& a, const Image& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

std::string_view to_string(RestoreTask t) {
  for (const auto& e : kTasks)
    if (e.task == t) return e.name;
  return "?";
}

std::string_view to_string(RestoreAlgo a) {
  for (const auto& e : kAlgos)
    if (e.algo == a) return e.name;
  return "?";
}

std::string_view to_string(AnchorKind a) {
  switch (a) {
    case AnchorKind::AdjointObserved:
      return "adjoint";
    case AnchorKind::Observed:
      return "observed";
    case AnchorKind::Ones:
      return "ones";
    case AnchorKind::Zero:
      return "zero";
    case AnchorKind::MaskFill:
      return "mask-fill";
  }
  return "?";
}

AnchorKind parse_anchor_kind(std::string_view text) {
  for (AnchorKind k : {AnchorKind::AdjointObserved, AnchorKind::Observed, AnchorKind::Ones,
                       AnchorKind::Zero, AnchorKind::MaskFill})
    if (to_string(k) == text) return k;
  throw std::invalid_argument("unknown anchor kind '" + std::string(text) + "'");
}

std::string_view to_string(DualProjection p) {
  return p == DualProjection::Standard ? "standard" : "unscaled";
}

DualProjection parse_projection(std::string_view text) {
  if (text == "standard") return DualProjection::Standard;
  if (text == "unscaled") return DualProjection::Unscaled;
  throw std::invalid_argument("unknown dual projection '" + std::string(text) + "'");
}

bool ExperimentPreset::is_deblur() const {
  return task == RestoreTask::DeblurGaussian || task == RestoreTask::DeblurUniform;
}

bool ExperimentPreset::is_tv() const {
  return algo == RestoreAlgo::Cp || algo == RestoreAlgo::Ppp || algo == RestoreAlgo::Hppp;
}

void ExperimentPreset::validate() const {
  if (!(tau > 0.0) || !(s > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument(id + ": tau, s and lambda must be positive");
  if (is_tv() && !(beta > 0.0)) throw std::invalid_argument(id + ": beta must be positive");
  if (!(noise_level >= 0.0) || !(noise_scale > 0.0))
    throw std::invalid_argument(id + ": invalid noise level");
  if (n_iters < 1) throw std::invalid_argument(id + ": n_iters must be >= 1");
  const bool wants_anchor = algo == RestoreAlgo::Hppp || algo == RestoreAlgo::GraredHp3;
  const bool wants_relax = algo == RestoreAlgo::Ppp || algo == RestoreAlgo::GraredP3;
  if (wants_anchor && schedule.role() != Schedule::Role::AnchorCoefficient)
    throw std::invalid_argument(id + ": schedule must be an anchor coefficient");
  if (wants_relax && schedule.role() != Schedule::Role::RelaxationCoefficient)
    throw std::invalid_argument(id + ": schedule must be a relaxation coefficient");
  if (task == RestoreTask::InpaintBernoulli &&
      !(missing_probability >= 0.0 && missing_probability < 1.0))
    throw std::invalid_argument(id + ": missing probability must lie in [0,1)");
}

std::vector<std::string> preset_ids() {
  std::vector<std::string> ids;
  for (const auto& t : kTasks)
    for (const auto& a : kAlgos) ids.push_back(std::string(t.name) + "-" + std::string(a.name));
  return ids;
}

ExperimentPreset make_preset(std::string_view id) {
  ExperimentPreset p;
  p.id = std::string(id);
  bool found = false;
  for (const auto& t : kTasks) {
    if (id.substr(0, t.name.size()) != t.name || id.size() <= t.name.size() + 1 ||
        id[t.name.size()] != '-')
      continue;
    const std::string_view rest = id.substr(t.name.size() + 1);
    for (const auto& a : kAlgos)
      if (rest == a.name) {
        p.task = t.task;
        p.algo = a.algo;
        found = true;
      }
  }
  if (!found) throw std::invalid_argument("unknown preset '" + std::string(id) + "'");

  using Role = Schedule::Role;
  switch (p.task) {
    case RestoreTask::DeblurGaussian:
      p.blur_sigma = 1.6;
      break;
    case RestoreTask::DeblurUniform:
      p.blur_size = 9;
      p.noise_level = std::sqrt(2.0);
      p.noise_scale = 255.0;
      break;
    case RestoreTask::InpaintBernoulli:
      p.missing_probability = 0.5;
      break;
    case RestoreTask::InpaintCharacter:
      p.mask_path = default_data_dir() / "masks" / "character.pgm";
      break;
  }

  const bool deblur = p.is_deblur();
  if (p.is_tv()) {
    p.tau = p.s = 0.57;
    p.norm_K = 1.75;
    p.n_iters = 400;
    if (deblur) {
      p.lambda = 2.0;
      p.beta = 5e-4;
    } else {
      p.lambda = 1.0;
      p.beta = 0.01;
    }
    switch (p.algo) {
      case RestoreAlgo::Ppp:
        p.schedule = Schedule::constant(1.2);
        break;
      case RestoreAlgo::Hppp:
        p.schedule = deblur ? Schedule::inverse_shift(1.0, 2, Role::AnchorCoefficient)
                            : Schedule::inverse_shift(0.1, 2, Role::AnchorCoefficient);
        p.anchor = deblur ? AnchorKind::AdjointObserved : AnchorKind::Ones;
        break;
      default:
        p.schedule = Schedule::constant(1.0);
        break;
    }
  } else {
    p.anchor = AnchorKind::Observed;
    if (deblur) {
      p.tau = p.s = 1.0;
      p.lambda = 20.0;
      p.n_iters = 400;
      p.denoiser_sigma_psf = 1.0;
    } else {
      p.tau = 10.0;
      p.s = 0.1;
      p.lambda = 5.0;
      p.n_iters = 400;
      p.denoiser_sigma_psf = 1.0;
    }
    if (p.algo == RestoreAlgo::GraredP3)
      p.schedule = Schedule::constant(0.2);
    else
      p.schedule = deblur ? Schedule::inverse_shift(1.0, 2, Role::AnchorCoefficient)
                          : Schedule::inverse_shift(0.05, 2, Role::AnchorCoefficient);
  }
  return p;
}

Degradation degrade(const ExperimentPreset& p, const Image& clean, std::uint64_t seed) {
  Degradation d;
  const double sigma = p.noise_sigma();
  switch (p.task) {
    case RestoreTask::DeblurGaussian:
    case RestoreTask::DeblurUniform: {
      d.psf = p.task == RestoreTask::DeblurGaussian ? make_gaussian_psf(p.blur_sigma)
                                                   : make_uniform_psf(p.blur_size);
      d.observed = add_wgn(convolve_psf(clean, *d.psf), sigma, derive_seed(seed, "noise"));
      break;
    }
    case RestoreTask::InpaintBernoulli:
    case RestoreTask::InpaintCharacter: {
      if (p.task == RestoreTask::InpaintBernoulli) {
        d.mask = make_bernoulli_mask(clean.rows(), clean.cols(), p.missing_probability,
                                     derive_seed(seed, "mask"))
                     .grid;
      } else {
        d.mask = load_mask(p.mask_path).grid;
        check_same_shape(*d.mask, clean, "mask");
      }
      d.observed = *d.mask * add_wgn(clean, sigma, derive_seed(seed, "noise"));
      break;
    }
  }
  return d;
}

Image make_anchor(AnchorKind kind, const Degradation& d) {
  const Image& y = d.observed;
  switch (kind) {
    case AnchorKind::AdjointObserved:
      if (!d.psf) throw std::invalid_argument("anchor 'adjoint' needs a blur kernel");
      return correlate_psf(y, *d.psf);
    case AnchorKind::Observed:
      return y;
    case AnchorKind::Ones:
      return Image::Ones(y.rows(), y.cols());
    case AnchorKind::Zero:
      return Image::Zero(y.rows(), y.cols());
    case AnchorKind::MaskFill:
      if (!d.mask) throw std::invalid_argument("anchor 'mask-fill' needs a mask");
      return *d.mask * y + 0.5 * (1.0 - *d.mask);
  }
  return y;
}

std::vector<Image> inpaint_anchor_set(const Degradation& d) {
  return {make_anchor(AnchorKind::Zero, d), make_anchor(AnchorKind::MaskFill, d),
          make_anchor(AnchorKind::Ones, d), make_anchor(AnchorKind::Observed, d)};
}

double tv_objective(const ExperimentPreset& p, const Degradation& d, const Image& x) {
  const double tv = p.beta * total_variation(x);
  if (d.psf) return 0.5 * p.lambda * squared_norm(Image(convolve_psf(x, *d.psf) - d.observed)) + tv;
  return p.lambda * squared_norm(Image(*d.mask * x - d.observed)) + tv;
}

namespace {

Resolvent<Image> data_resolvent(const Degradation& d) {
  if (d.psf) return deblur_resolvent(*d.psf, d.observed);
  return inpaint_resolvent(*d.mask, d.observed);
}

struct SolveOutput {
  Image x;
  RunTrace trace;
  long steps = 0;
};

SolveOutput solve_tv(const ExperimentPreset& p, const Degradation& d, const Image& clean,
                     const Image& x0, const Image& anchor_x, long stride) {
  const SaddleProblem<Image, DualField> sp{data_resolvent(d), linf_ball_resolvent(p.beta, p.projection),
                                           gradient_op(), p.lambda};
  const Preconditioner<Image, DualField> P(p.tau, p.s, gradient_op(), p.norm_K);
  IterationOptions<TvPoint> opts;
  opts.stride = stride;
  opts.seminorm = [&P](const TvPoint& w) { return seminorm_M(P, w); };
  if (d.psf) {
    // Same value as tv_objective with the kernel spectrum computed once.
    Fft2<double> fft;
    auto kf = std::make_shared<const Spectrum>(
        fft.forward(embed_psf(*d.psf, x0.rows(), x0.cols())));
    opts.objective = [&p, &d, kf](const TvPoint& u) {
      Fft2<double> f;
      const Image ax = f.inverse_real(Spectrum(*kf * f.forward(u.x)));
      return 0.5 * p.lambda * squared_norm(Image(ax - d.observed)) + p.beta * total_variation(u.x);
    };
  } else {
    opts.objective = [&p, &d](const TvPoint& u) { return tv_objective(p, d, u.x); };
  }
  opts.psnr = [&clean](const TvPoint& u) { return psnr(u.x, clean); };
  const TvPoint u0{x0, DualField::Zero(x0.rows(), x0.cols())};
  auto T = [&sp, &P](const TvPoint& u) { return cp_step(sp, P, u); };

  IterationResult<TvPoint> res;
  switch (p.algo) {
    case RestoreAlgo::Cp:
      res = ppp_iterate(T, u0, Schedule::constant(1.0), p.n_iters, opts);
      break;
    case RestoreAlgo::Ppp:
      res = ppp_iterate(T, u0, p.schedule, p.n_iters, opts);
      break;
    case RestoreAlgo::Hppp: {
      const TvPoint a{anchor_x, DualField::Zero(x0.rows(), x0.cols())};
      res = hppp_saddle_iterate(sp, P, a, u0, p.schedule, p.n_iters, opts);
      break;
    }
    default:
      throw std::logic_error("solve_tv: not a TV algorithm");
  }
  return {std::move(res.u.x), std::move(res.trace), res.steps};
}

SolveOutput solve_grared(const ExperimentPreset& p, const Degradation& d, const Image& clean,
                         const Image& x0, const Image& anchor_x, long stride) {
  const Denoiser D = p.denoiser_command ? Denoiser::external(*p.denoiser_command)
                                        : Denoiser::gaussian_conv(p.denoiser_sigma_psf);
  GraredConfig cfg;
  cfg.tau = p.tau;
  cfg.s = p.s;
  cfg.lambda = p.lambda;
  cfg.schedule = p.schedule;
  cfg.n_iters = p.n_iters;
  const Image y0 = Image::Zero(x0.rows(), x0.cols());
  IterationOptions<ImagePair> opts;
  opts.stride = stride;
  opts.psnr = [&clean](const ImagePair& u) { return psnr(u.x, clean); };
  GraredResult res;
  if (p.algo == RestoreAlgo::GraredHp3) {
    cfg.anchor = ImagePair{anchor_x, y0};
    res = grared_hp3(data_resolvent(d), D, cfg, x0, y0, opts);
  } else {
    res = grared_p3(data_resolvent(d), D, cfg, x0, y0, opts);
  }
  return {std::move(res.u.x), std::move(res.trace), res.steps};
}

RestoreResult run_degraded(const ExperimentPreset& p, const Degradation& d, const Image& clean,
                           std::uint64_t seed, const RunOverrides& o) {
  const Image x0 = o.x0 ? *o.x0 : d.observed;
  check_same_shape(x0, clean, "x0");
  const bool anchored = p.algo == RestoreAlgo::Hppp || p.algo == RestoreAlgo::GraredHp3;
  Image anchor_x;
  if (anchored) {
    anchor_x = o.anchor_x ? *o.anchor_x : make_anchor(p.anchor, d);
    check_same_shape(anchor_x, clean, "anchor");
  }
  const auto start = std::chrono::steady_clock::now();
  SolveOutput out = p.is_tv() ? solve_tv(p, d, clean, x0, anchor_x, o.trace_stride)
                              : solve_grared(p, d, clean, x0, anchor_x, o.trace_stride);
  RestoreResult r;
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  r.preset_id = p.id;
  r.seed = seed;
  r.degraded = d.observed;
  r.restored = std::move(out.x);
  r.trace = std::move(out.trace);
  r.iters = out.steps;
  r.psnr_in = psnr(d.observed, clean);
  r.psnr_out = psnr(r.restored, clean);
  return r;
}

}  // namespace

RestoreResult run_preset(const ExperimentPreset& p, const Image& clean, std::uint64_t seed,
                         const RunOverrides& overrides) {
  p.validate();
  const Degradation d = degrade(p, clean, seed);
  return run_degraded(p, d, clean, seed, overrides);
}

std::vector<RestoreResult> anchor_study(const ExperimentPreset& base, const Image& clean,
                                        std::uint64_t seed, const std::vector<Image>& anchors) {
  base.validate();
  if (base.algo != RestoreAlgo::Hppp && base.algo != RestoreAlgo::GraredHp3)
    throw std::invalid_argument("anchor_study: preset must use an anchored algorithm");
  const Degradation d = degrade(base, clean, seed);
  std::vector<RestoreResult> out;
  out.reserve(anchors.size());
  for (const Image& a : anchors) {
    RunOverrides o;
    o.anchor_x = a;
    out.push_back(run_degraded(base, d, clean, seed, o));
  }
  return out;
}

InitRobustness init_robustness(const ExperimentPreset& p, const Image& clean, int n_inits,
                               std::uint64_t seed) {
  if (n_inits < 1) throw std::invalid_argument("init_robustness: n_inits must be >= 1");
  p.validate();
  const Degradation d = degrade(p, clean, seed);
  InitRobustness rep;
  std::vector<Image> finals;
  for (int i = 0; i < n_inits; ++i) {
    RunOverrides o;
    o.x0 = random_image(clean.rows(), clean.cols(),
                        derive_seed(seed, "init-" + std::to_string(i)));
    RestoreResult r = run_degraded(p, d, clean, seed, o);
    rep.psnrs.push_back(r.psnr_out);
    rep.max_final_fp = std::max(rep.max_final_fp, r.trace.back().fp_residual);
    finals.push_back(std::move(r.restored));
  }
  double sum = 0.0;
  for (double v : rep.psnrs) sum += v;
  rep.psnr_mean = sum / n_inits;
  const auto [lo, hi] = std::minmax_element(rep.psnrs.begin(), rep.psnrs.end());
  rep.psnr_spread = *hi - *lo;
  for (std::size_t i = 0; i < finals.size(); ++i)
    for (std::size_t j = i + 1; j < finals.size(); ++j)
      rep.max_pairwise_inf =
          std::max(rep.max_pairwise_inf, (finals[i] - finals[j]).abs().maxCoeff());
  return rep;
}

void write_results_dir(const std::filesystem::path& out, const RestoreResult& r,
                       bool include_timing) {
  const std::filesystem::path dir = out / r.preset_id;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ImageIoError("cannot create " + dir.string() + ": " + ec.message());
  write_pgm(dir / "restored.pgm", r.restored);
  {
    std::ofstream f(dir / "trace.csv", std::ios::binary);
    if (!f) throw ImageIoError("cannot write " + (dir / "trace.csv").string());
    r.trace.write_csv(f, include_timing);
  }
  auto real = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return format_real(v);
  };
  nlohmann::ordered_json j;
  j["preset_id"] = r.preset_id;
  j["seed"] = r.seed;
  j["psnr_in"] = real(r.psnr_in);
  j["psnr_out"] = real(r.psnr_out);
  j["iters"] = r.iters;
  j["wall_ms"] = r.wall_ms;
  std::ofstream f(dir / "result.json", std::ios::binary);
  if (!f) throw ImageIoError("cannot write " + (dir / "result.json").string());
  f << j.dump(2) << '\n';
}

}  // namespace hppp
