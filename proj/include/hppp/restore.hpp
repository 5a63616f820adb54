#pragma once

#include "hppp/denoiser.hpp"
#include "hppp/imaging.hpp"
#include "hppp/prox.hpp"
#include "hppp/schedule.hpp"
#include "hppp/trace.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hppp {

enum class RestoreTask { DeblurGaussian, DeblurUniform, InpaintBernoulli, InpaintCharacter };
enum class RestoreAlgo { Cp, Ppp, Hppp, GraredP3, GraredHp3 };

/// Primal anchor choices; the dual anchor is always zero.
enum class AnchorKind {
  AdjointObserved,  // A^T y (deblurring)
  Observed,         // y
  Ones,
  Zero,
  MaskFill,         // M . y + 0.5 (1 - M) (inpainting)
};

/// Directory holding the bundled images and masks.
std::filesystem::path default_data_dir();

struct ExperimentPreset {
  std::string id;
  RestoreTask task = RestoreTask::DeblurGaussian;
  RestoreAlgo algo = RestoreAlgo::Hppp;

  // Degradation.
  double blur_sigma = 1.6;
  int blur_size = 9;
  double noise_level = 0.01;
  /// Intensity scale the noise level refers to: 1 for [0,1] data, 255 for
  /// 8-bit units.
  double noise_scale = 1.0;
  double missing_probability = 0.5;
  std::filesystem::path mask_path;

  // Solver.
  double tau = 0.57;
  double s = 0.57;
  /// Operator norm handed to the preconditioner for TV solvers.
  double norm_K = 1.75;
  double lambda = 2.0;
  double beta = 5e-4;
  DualProjection projection = DualProjection::Standard;
  /// Anchor coefficient for hppp / grared-hp3, relaxation for ppp /
  /// grared-p3, unused for cp.
  Schedule schedule = Schedule::inverse_shift(1.0, 2);
  AnchorKind anchor = AnchorKind::AdjointObserved;
  long n_iters = 400;

  // GraRED denoiser.
  double denoiser_sigma_psf = 1.0;
  std::optional<std::string> denoiser_command;

  bool is_deblur() const;
  bool is_tv() const;
  double noise_sigma() const { return noise_level / noise_scale; }
  void validate() const;
};

/// Preset ids are `<task>-<algo>` with task in {gauss16, uniform9,
/// bernoulli50, character} and algo in {cp, ppp, hppp, grared-p3,
/// grared-hp3}. Throws std::invalid_argument for unknown ids.
ExperimentPreset make_preset(std::string_view id);
std::vector<std::string> preset_ids();

std::string_view to_string(RestoreTask t);
std::string_view to_string(RestoreAlgo a);
std::string_view to_string(AnchorKind a);
AnchorKind parse_anchor_kind(std::string_view text);
DualProjection parse_projection(std::string_view text);
std::string_view to_string(DualProjection p);

struct Degradation {
  Image observed;
  std::optional<Psf> psf;
  std::optional<Image> mask;
};

/// Blur or mask, then add noise. Seeds are derived from `seed`.
Degradation degrade(const ExperimentPreset& p, const Image& clean, std::uint64_t seed);

Image make_anchor(AnchorKind kind, const Degradation& d);

/// lambda/2 ||A x - y||^2 + beta TV(x) for deblurring,
/// lambda ||M . x - y||^2 + beta TV(x) for inpainting.
double tv_objective(const ExperimentPreset& p, const Degradation& d, const Image& x);

struct RunOverrides {
  std::optional<Image> x0;
  std::optional<Image> anchor_x;
  long trace_stride = 1;
};

struct RestoreResult {
  std::string preset_id;
  std::uint64_t seed = 0;
  Image degraded;
  Image restored;
  RunTrace trace;
  double psnr_in = 0.0;
  double psnr_out = 0.0;
  long iters = 0;
  double wall_ms = 0.0;
};

RestoreResult run_preset(const ExperimentPreset& p, const Image& clean, std::uint64_t seed,
                         const RunOverrides& overrides = {});

/// Restores the same degraded image once per supplied primal anchor.
std::vector<RestoreResult> anchor_study(const ExperimentPreset& base, const Image& clean,
                                        std::uint64_t seed, const std::vector<Image>& anchors);

/// The four inpainting anchors 0, M . y + 0.5(1 - M), 1, y.
std::vector<Image> inpaint_anchor_set(const Degradation& d);

struct InitRobustness {
  double psnr_mean = 0.0;
  double psnr_spread = 0.0;      // max - min
  double max_pairwise_inf = 0.0; // max_ij ||x_N(i) - x_N(j)||_inf
  double max_final_fp = 0.0;     // largest final fixed-point residual
  std::vector<double> psnrs;
};

/// Runs from n_inits uniform random initial images (dual start zero) with
/// the degradation and anchor held fixed.
InitRobustness init_robustness(const ExperimentPreset& p, const Image& clean, int n_inits,
                               std::uint64_t seed);

/// Writes `<out>/<preset_id>/{restored.pgm, trace.csv, result.json}`.
void write_results_dir(const std::filesystem::path& out, const RestoreResult& r,
                       bool include_timing = false);

}  // namespace hppp
