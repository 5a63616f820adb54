// hppp: command-line front end for the toy oracle, the restoration presets
// and the property checks.
//
// Exit status: 0 ok, 1 check failure, 2 usage, 3 divergence, 4 I/O.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "checks.hpp"
#include "hppp/restore.hpp"
#include "hppp/toy_saddle.hpp"

namespace fs = std::filesystem;
using namespace hppp;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kDiverged = 3, kIo = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ToyPoint parse_point(const std::string& flag, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError(flag + ": expected x,y but got '" + text + "'");
  try {
    std::size_t a = 0, b = 0;
    const std::string xs = text.substr(0, comma), ys = text.substr(comma + 1);
    const double x = std::stod(xs, &a);
    const double y = std::stod(ys, &b);
    if (a != xs.size() || b != ys.size()) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw UsageError(flag + ": expected x,y but got '" + text + "'");
  }
}

std::string point_text(const ToyPoint& p) {
  return "(" + format_real(p.x) + "," + format_real(p.y) + ")";
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ImageIoError("cannot write " + path.string());
  f << body;
  if (!f) throw ImageIoError("cannot write " + path.string());
}

// ---- toy ------------------------------------------------------------------

struct ToyFlags {
  std::string algo = "hppp";
  std::string anchor;
  std::string init = "0,0";
  std::string mu = "inv-shift:1:2";
  std::string relax = "1";
  long iters = 1000;
  std::string out;
  bool timing = false;
};

int cmd_toy(const ToyFlags& f) {
  ToyConfig c;
  c.init = parse_point("--init", f.init);
  c.n_iters = f.iters;
  ToyAlgorithm algo;
  if (f.algo == "hppp") {
    if (f.anchor.empty()) throw UsageError("--anchor is required when --algo is hppp");
    c.anchor = parse_point("--anchor", f.anchor);
    c.mu = Schedule::parse(f.mu, Schedule::Role::AnchorCoefficient);
    algo = ToyAlgorithm::Hppp;
  } else {
    c.mu = Schedule::parse(f.relax, Schedule::Role::RelaxationCoefficient);
    algo = ToyAlgorithm::Ppp;
  }
  const ToyRun run = toy_run(c, algo);
  const ToyPoint& last = run.trajectory.back();
  const double err = toy_seminorm(last - run.limit_claim);
  if (!f.out.empty()) {
    std::error_code ec;
    fs::create_directories(f.out, ec);
    if (ec) throw ImageIoError("cannot create " + f.out + ": " + ec.message());
    std::ostringstream traj, trace;
    write_trajectory_csv(traj, run.trajectory);
    run.trace.write_csv(trace, f.timing);
    write_file(fs::path(f.out) / "trajectory.csv", traj.str());
    write_file(fs::path(f.out) / "trace.csv", trace.str());
  }
  std::cout << "limit_claim=" << point_text(run.limit_claim) << " final=" << point_text(last)
            << " err_M=" << format_real(err) << '\n';
  return kOk;
}

// ---- deblur / inpaint -----------------------------------------------------

struct RestoreFlags {
  std::string preset, task, algo, input, out;
  std::uint64_t seed = 1;
  std::optional<long> iters, trace_stride;
  std::optional<double> tau, s, lambda, beta, norm_k, noise_level, noise_scale, blur_sigma,
      missing, denoiser_sigma;
  std::optional<std::string> schedule, anchor, projection, mask, denoiser_cmd;
  bool timing = false;
};

int cmd_restore(const RestoreFlags& f, bool deblur) {
  std::string id = f.preset;
  if (id.empty()) {
    if (f.task.empty()) throw UsageError("--preset or --task is required");
    id = f.task + "-" + (f.algo.empty() ? std::string("hppp") : f.algo);
  } else if (!f.task.empty() || !f.algo.empty()) {
    throw UsageError("--preset cannot be combined with --task or --algo");
  }
  ExperimentPreset p;
  try {
    p = make_preset(id);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (p.is_deblur() != deblur)
    throw UsageError("preset '" + id + "' is not a " + (deblur ? "deblurring" : "inpainting") + " preset");

  if (f.iters) p.n_iters = *f.iters;
  if (f.tau) p.tau = *f.tau;
  if (f.s) p.s = *f.s;
  if (f.lambda) p.lambda = *f.lambda;
  if (f.beta) p.beta = *f.beta;
  if (f.norm_k) p.norm_K = *f.norm_k;
  if (f.noise_level) p.noise_level = *f.noise_level;
  if (f.noise_scale) p.noise_scale = *f.noise_scale;
  if (f.blur_sigma) p.blur_sigma = *f.blur_sigma;
  if (f.missing) p.missing_probability = *f.missing;
  if (f.mask) p.mask_path = *f.mask;
  if (f.denoiser_sigma) p.denoiser_sigma_psf = *f.denoiser_sigma;
  if (f.denoiser_cmd) p.denoiser_command = *f.denoiser_cmd;
  if (f.projection) p.projection = parse_projection(*f.projection);
  if (f.anchor) p.anchor = parse_anchor_kind(*f.anchor);
  if (f.schedule) {
    const bool anchored = p.algo == RestoreAlgo::Hppp || p.algo == RestoreAlgo::GraredHp3;
    p.schedule = Schedule::parse(*f.schedule, anchored ? Schedule::Role::AnchorCoefficient
                                                       : Schedule::Role::RelaxationCoefficient);
  }

  const Image clean = read_pgm(fs::path(f.input));
  RunOverrides o;
  if (f.trace_stride) o.trace_stride = *f.trace_stride;
  const RestoreResult r = run_preset(p, clean, f.seed, o);
  if (!f.out.empty()) write_results_dir(f.out, r, f.timing);
  std::printf("psnr_in=%.4f psnr_out=%.4f\n", r.psnr_in, r.psnr_out);
  return kOk;
}

void add_restore_flags(CLI::App* sub, RestoreFlags& f) {
  sub->add_option("--preset", f.preset, "Preset id <task>-<algo>, e.g. gauss16-hppp");
  sub->add_option("--task", f.task, "gauss16 | uniform9 | bernoulli50 | character (without --preset)");
  sub->add_option("--algo", f.algo, "cp | ppp | hppp | grared-p3 | grared-hp3 (without --preset)");
  sub->add_option("--input", f.input, "Clean reference image (PGM)")->required();
  sub->add_option("--seed", f.seed, "Seed for noise and masks");
  sub->add_option("--out", f.out, "Results directory");
  sub->add_option("--iters", f.iters, "Iteration count");
  sub->add_option("--tau", f.tau);
  sub->add_option("--s", f.s);
  sub->add_option("--lambda", f.lambda, "Data-fidelity weight");
  sub->add_option("--beta", f.beta, "TV weight");
  sub->add_option("--norm-k", f.norm_k, "Operator norm handed to the preconditioner");
  sub->add_option("--schedule", f.schedule, "inv-shift:c:k0 | inv-pow:a | min2k | const:v");
  sub->add_option("--anchor", f.anchor, "adjoint | observed | ones | zero | mask-fill");
  sub->add_option("--projection", f.projection, "standard | unscaled");
  sub->add_option("--noise-level", f.noise_level);
  sub->add_option("--noise-scale", f.noise_scale, "1 for [0,1] units, 255 for 8-bit units");
  sub->add_option("--blur-sigma", f.blur_sigma);
  sub->add_option("--missing", f.missing, "Bernoulli missing probability");
  sub->add_option("--mask", f.mask, "Mask PGM for the character task");
  sub->add_option("--denoiser-sigma", f.denoiser_sigma, "Width of the built-in Gaussian denoiser");
  sub->add_option("--denoiser-cmd", f.denoiser_cmd, "External denoiser: PGM on stdin, PGM on stdout");
  sub->add_option("--trace-stride", f.trace_stride);
  sub->add_flag("--timing", f.timing, "Fill the elapsed_ms column of trace.csv");
}

// ---- check ----------------------------------------------------------------

int cmd_check(const std::string& suite, std::uint64_t seed) {
  const auto lines = cli::run_check_suite(suite, seed);
  bool ok = true;
  for (const auto& l : lines) {
    std::printf("%s %s %s=%.6g tol=%.6g\n", l.pass ? "PASS" : "FAIL", l.name.c_str(),
                l.measure.c_str(), l.value, l.tol);
    ok = ok && l.pass;
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Halpern-anchored preconditioned proximal point solvers"};
  app.require_subcommand(1);

  ToyFlags toy;
  auto* toy_cmd = app.add_subcommand("toy", "1D saddle problem with a known solution set");
  toy_cmd->add_option("--algo", toy.algo)->check(CLI::IsMember({"hppp", "ppp"}));
  toy_cmd->add_option("--anchor", toy.anchor, "Anchor x,y (hppp)");
  toy_cmd->add_option("--init", toy.init, "Starting point x,y");
  toy_cmd->add_option("--mu", toy.mu, "Anchor schedule (hppp)");
  toy_cmd->add_option("--relax", toy.relax, "Relaxation (ppp): a value or const:v");
  toy_cmd->add_option("--iters", toy.iters);
  toy_cmd->add_option("--out", toy.out, "Directory for trajectory.csv and trace.csv");
  toy_cmd->add_flag("--timing", toy.timing);

  RestoreFlags deblur, inpaint;
  auto* deblur_cmd = app.add_subcommand("deblur", "Deblurring presets");
  add_restore_flags(deblur_cmd, deblur);
  auto* inpaint_cmd = app.add_subcommand("inpaint", "Inpainting presets");
  add_restore_flags(inpaint_cmd, inpaint);

  std::string suite = "all";
  std::uint64_t check_seed = 0;
  auto* check_cmd = app.add_subcommand("check", "Property suites, one PASS/FAIL line per invariant");
  check_cmd->add_option("--suite", suite)->check(CLI::IsMember(cli::check_suite_names()));
  check_cmd->add_option("--seed", check_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*toy_cmd) return cmd_toy(toy);
    if (*deblur_cmd) return cmd_restore(deblur, true);
    if (*inpaint_cmd) return cmd_restore(inpaint, false);
    if (*check_cmd) return cmd_check(suite, check_seed);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DivergedError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kDiverged;
  } catch (const ImageIoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const DenoiserError& e) {
    std::cerr << "denoiser error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}
