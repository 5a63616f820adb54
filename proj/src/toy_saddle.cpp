#include "hppp/toy_saddle.hpp"

#include <cmath>
#include <ostream>

#include "hppp/prox.hpp"

namespace hppp {

SaddleProblem<double, double> toy_problem() {
  return {[](double v, double t) { return toy_prox_f(v, t); },
          [](double v, double t) { return toy_prox_gstar(v, t); }, identity_op<double>(), 1.0};
}

Preconditioner<double, double> toy_preconditioner(double tau, double s) {
  return {tau, s, identity_op<double>(), 1.0};
}

ToyPoint toy_T(const ToyPoint& u, double tau, double s) {
  if (tau * s > 1.0 + Preconditioner<double, double>::kDegenerateTol)
    throw std::invalid_argument("toy_T: need tau s <= 1");
  const double xp = toy_prox_f(u.x - tau * u.y, tau);
  const double yp = toy_prox_gstar(u.y + s * (2.0 * xp - u.x), s);
  return {xp, yp};
}

ToyPoint toy_projection(const ToyPoint& a) {
  const double d = a.x - a.y;
  if (d - 1.0 <= 0.0) return {1.0, 0.0};
  return {d, 0.0};
}

double toy_seminorm(const ToyPoint& w) { return std::abs(w.x - w.y); }

bool in_saddle_set(const ToyPoint& u, double tol) {
  return u.x >= 1.0 - tol && std::abs(u.y) <= tol;
}

ToyRun toy_run(const ToyConfig& cfg, ToyAlgorithm algo) {
  if (cfg.n_iters < 1) throw std::invalid_argument("toy_run: n_iters must be >= 1");
  ToyRun run;
  run.trajectory.reserve(static_cast<std::size_t>(cfg.n_iters) + 1);
  IterationOptions<ToyPoint> opts;
  opts.seminorm = toy_seminorm;
  opts.observer = [&run](long, const ToyPoint& u) { run.trajectory.push_back(u); };
  auto T = [](const ToyPoint& u) { return toy_T(u); };
  if (algo == ToyAlgorithm::Hppp) {
    auto res = hppp_iterate(T, cfg.anchor, cfg.init, cfg.mu, cfg.n_iters, opts);
    run.trace = std::move(res.trace);
    run.limit_claim = toy_projection(cfg.anchor);
  } else {
    auto res = ppp_iterate(T, cfg.init, cfg.mu, cfg.n_iters, opts);
    run.trace = std::move(res.trace);
    run.limit_claim = res.u;
  }
  return run;
}

void write_trajectory_csv(std::ostream& out, const std::vector<ToyPoint>& trajectory) {
  out << "iter,x,y\n";
  for (std::size_t k = 0; k < trajectory.size(); ++k)
    out << k << ',' << format_real(trajectory[k].x) << ',' << format_real(trajectory[k].y) << '\n';
}

}  // namespace hppp
