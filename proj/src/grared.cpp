#include "hppp/grared.hpp"

#include <cmath>
#include <stdexcept>

namespace hppp {

void GraredConfig::validate() const {
  if (!(tau > 0.0) || !(s > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("grared: tau, s and lambda must be positive");
  if (tau * s > 1.0 + 1e-9) throw std::invalid_argument("grared: need tau s <= 1");
  if (n_iters < 1) throw std::invalid_argument("grared: n_iters must be >= 1");
}

double grared_seminorm(double tau, double s, const ImagePair& w) {
  const double q = squared_norm(w.x) / tau - 2.0 * inner(w.x, w.y) + squared_norm(w.y) / s;
  return std::sqrt(std::max(q, 0.0));
}

namespace {

IterationOptions<ImagePair> with_seminorm(const GraredConfig& cfg,
                                          const IterationOptions<ImagePair>& opts) {
  IterationOptions<ImagePair> o = opts;
  if (!o.seminorm) {
    const double tau = cfg.tau, s = cfg.s;
    o.seminorm = [tau, s](const ImagePair& w) { return grared_seminorm(tau, s, w); };
  }
  return o;
}

void check_shapes(const Image& x0, const Image& y0) {
  if (x0.rows() != y0.rows() || x0.cols() != y0.cols())
    throw std::invalid_argument("grared: x0 and y0 shapes differ");
}

}  // namespace

GraredResult grared_hp3(const Resolvent<Image>& prox_f, const Denoiser& D, const GraredConfig& cfg,
                        const Image& x0, const Image& y0,
                        const IterationOptions<ImagePair>& opts) {
  cfg.validate();
  check_shapes(x0, y0);
  if (cfg.schedule.role() != Schedule::Role::AnchorCoefficient)
    throw std::invalid_argument("grared_hp3: schedule must be an anchor coefficient");
  const ImagePair anchor = cfg.anchor ? *cfg.anchor : ImagePair{x0, Image::Zero(x0.rows(), x0.cols())};
  if (anchor.x.rows() != x0.rows() || anchor.x.cols() != x0.cols() ||
      anchor.y.rows() != x0.rows() || anchor.y.cols() != x0.cols())
    throw std::invalid_argument("grared_hp3: anchor shape mismatch");
  const IterationOptions<ImagePair> o = with_seminorm(cfg, opts);
  const double tau = cfg.tau, s = cfg.s;

  GraredResult res{{x0, y0}, {}, 0};
  detail::Stopwatch clock;
  if (o.observer) o.observer(0, res.u);
  for (long k = 0; k < cfg.n_iters; ++k) {
    const Image& x = res.u.x;
    const Image& y = res.u.y;
    const double mu_k = cfg.schedule(k);
    const double mu_k1 = cfg.schedule(k + 1);
    Image d = prox_f(Image(x - tau * y), tau * cfg.lambda);
    Image x_next = mu_k * anchor.x + (1.0 - mu_k) * d;
    Image v = D.residual(Image(s * (2.0 * d - x) + y));
    Image y_next = mu_k1 * anchor.y + (1.0 - mu_k1) * v;
    ImagePair next{std::move(x_next), std::move(y_next)};
    const ImagePair Tu{std::move(d), std::move(v)};
    const bool stop = detail::record_step(res.trace, o, k, cfg.n_iters, res.u, Tu, next, clock);
    res.u = std::move(next);
    res.steps = k + 1;
    if (stop) break;
  }
  return res;
}

GraredResult grared_p3(const Resolvent<Image>& prox_f, const Denoiser& D, const GraredConfig& cfg,
                       const std::function<double(long)>& relax, const Image& x0,
                       const Image& y0, const IterationOptions<ImagePair>& opts) {
  cfg.validate();
  check_shapes(x0, y0);
  const IterationOptions<ImagePair> o = with_seminorm(cfg, opts);
  const double tau = cfg.tau, s = cfg.s;

  GraredResult res{{x0, y0}, {}, 0};
  detail::Stopwatch clock;
  if (o.observer) o.observer(0, res.u);
  for (long k = 0; k < cfg.n_iters; ++k) {
    const Image& x = res.u.x;
    const Image& y = res.u.y;
    const double lam = relax(k);
    if (!(lam >= 0.0 && lam <= 2.0))
      throw std::invalid_argument("grared_p3: lambda_k must lie in [0,2]");
    Image d = prox_f(Image(x - tau * y), tau * cfg.lambda);
    Image v = D.residual(Image(y + s * (2.0 * d - x)));
    ImagePair next{Image(lam * d + (1.0 - lam) * x), Image(lam * v + (1.0 - lam) * y)};
    const ImagePair Tu{std::move(d), std::move(v)};
    const bool stop = detail::record_step(res.trace, o, k, cfg.n_iters, res.u, Tu, next, clock);
    res.u = std::move(next);
    res.steps = k + 1;
    if (stop) break;
  }
  return res;
}

GraredResult grared_p3(const Resolvent<Image>& prox_f, const Denoiser& D, const GraredConfig& cfg,
                       const Image& x0, const Image& y0,
                       const IterationOptions<ImagePair>& opts) {
  if (cfg.schedule.role() != Schedule::Role::RelaxationCoefficient)
    throw std::invalid_argument("grared_p3: schedule must be a relaxation coefficient");
  const Schedule sched = cfg.schedule;
  return grared_p3(prox_f, D, cfg, [sched](long k) { return sched(k); }, x0, y0, opts);
}

std::vector<Image> drs_oracle(const Resolvent<Image>& prox_f, const Denoiser& D, double lambda,
                              const Image& w0, long n_iters) {
  if (n_iters < 0) throw std::invalid_argument("drs_oracle: n_iters must be >= 0");
  std::vector<Image> w{w0};
  w.reserve(static_cast<std::size_t>(n_iters) + 1);
  for (long k = 0; k < n_iters; ++k) {
    const Image& cur = w.back();
    const Image p = prox_f(cur, lambda);
    Image next = cur + D(Image(2.0 * p - cur)) - p;
    if (!all_finite(next)) throw DivergedError(k);
    w.push_back(std::move(next));
  }
  return w;
}

std::vector<AdmmState> pnp_admm(const Resolvent<Image>& prox_f, const Denoiser& D, double lambda,
                                const Image& w0, long n_iters) {
  if (n_iters < 0) throw std::invalid_argument("pnp_admm: n_iters must be >= 0");
  std::vector<AdmmState> states;
  states.reserve(static_cast<std::size_t>(n_iters) + 1);
  Image v = prox_f(w0, lambda);
  states.push_back({v, Image(w0 - v)});
  for (long k = 0; k < n_iters; ++k) {
    const AdmmState& cur = states.back();
    const Image z = D(Image(cur.v - cur.u_bar));
    Image v_next = prox_f(Image(z + cur.u_bar), lambda);
    Image u_next = cur.u_bar + z - v_next;
    if (!all_finite(v_next) || !all_finite(u_next)) throw DivergedError(k);
    states.push_back({std::move(v_next), std::move(u_next)});
  }
  return states;
}

}  // namespace hppp
