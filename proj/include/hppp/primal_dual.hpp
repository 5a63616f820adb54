#pragma once

#include "hppp/fixed_point.hpp"
#include "hppp/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace hppp {

/// Element u = (x, y) of H = X x Y.
template <typename X, typename Y>
struct PrimalDualPoint {
  X x;
  Y y;
};

template <typename X, typename Y>
PrimalDualPoint<X, Y> operator+(const PrimalDualPoint<X, Y>& a, const PrimalDualPoint<X, Y>& b) {
  return {X(a.x + b.x), Y(a.y + b.y)};
}
template <typename X, typename Y>
PrimalDualPoint<X, Y> operator-(const PrimalDualPoint<X, Y>& a, const PrimalDualPoint<X, Y>& b) {
  return {X(a.x - b.x), Y(a.y - b.y)};
}
template <typename X, typename Y>
PrimalDualPoint<X, Y> operator*(double c, const PrimalDualPoint<X, Y>& a) {
  return {X(c * a.x), Y(c * a.y)};
}
template <typename X, typename Y>
double inner(const PrimalDualPoint<X, Y>& a, const PrimalDualPoint<X, Y>& b) {
  return inner(a.x, b.x) + inner(a.y, b.y);
}
template <typename X, typename Y>
double squared_norm(const PrimalDualPoint<X, Y>& a) {
  return squared_norm(a.x) + squared_norm(a.y);
}
template <typename X, typename Y>
bool all_finite(const PrimalDualPoint<X, Y>& a) {
  return all_finite(a.x) && all_finite(a.y);
}

/// Bounded linear operator K : X -> Y together with its adjoint.
template <typename X, typename Y>
struct LinearOp {
  std::function<Y(const X&)> forward;
  std::function<X(const Y&)> adjoint;

  Y operator()(const X& x) const { return forward(x); }
};

/// K = grad (forward differences, Neumann) with K* = -div.
inline LinearOp<Image, DualField> gradient_op() {
  return {[](const Image& x) { return grad(x); },
          [](const DualField& p) { return Image(-div(p)); }};
}

/// K = c * I on X.
template <typename X>
LinearOp<X, X> identity_op(double c = 1.0) {
  return {[c](const X& x) { return X(c * x); }, [c](const X& y) { return X(c * y); }};
}

/// Resolvent handle: (v, t) -> (I + t dh)^{-1} v.
template <typename X>
using Resolvent = std::function<X(const X&, double)>;

/// Block preconditioner
///   M = [ (1/tau) I   -K*     ]
///       [ -K          (1/s) I ]
/// admissible (positive semi-definite) when tau s ||K||^2 <= 1; the
/// degenerate case is tau s ||K||^2 = 1.
template <typename X, typename Y>
class Preconditioner {
 public:
  static constexpr double kDegenerateTol = 1e-9;

  Preconditioner(double tau, double s, LinearOp<X, Y> K, double norm_K)
      : tau_(tau), s_(s), K_(std::move(K)), norm_K_(norm_K) {
    if (!(tau > 0.0) || !(s > 0.0) || !(norm_K > 0.0))
      throw std::invalid_argument("Preconditioner: tau, s and ||K|| must be positive");
    if (tau * s * norm_K * norm_K > 1.0 + kDegenerateTol)
      throw std::invalid_argument("Preconditioner: tau s ||K||^2 exceeds 1, M is indefinite");
  }

  double tau() const { return tau_; }
  double s() const { return s_; }
  double norm_K() const { return norm_K_; }
  const LinearOp<X, Y>& K() const { return K_; }
  bool degenerate() const {
    return std::abs(tau_ * s_ * norm_K_ * norm_K_ - 1.0) <= kDegenerateTol;
  }

 private:
  double tau_;
  double s_;
  LinearOp<X, Y> K_;
  double norm_K_;
};

template <typename X, typename Y>
PrimalDualPoint<X, Y> apply_M(const Preconditioner<X, Y>& P, const PrimalDualPoint<X, Y>& w) {
  const X Kt_y = P.K().adjoint(w.y);
  const Y K_x = P.K()(w.x);
  return {X((1.0 / P.tau()) * w.x - Kt_y), Y((1.0 / P.s()) * w.y - K_x)};
}

/// ||w||_M = sqrt(<M w, w>), with negative round-off clamped to zero.
template <typename X, typename Y>
double seminorm_M(const Preconditioner<X, Y>& P, const PrimalDualPoint<X, Y>& w) {
  const double q = inner(apply_M(P, w), w);
  return std::sqrt(std::max(q, 0.0));
}

/// Houses f, g*, K and the fidelity weight lambda of
///   min_x max_y <Kx, y> + lambda f(x) - g*(y).
template <typename X, typename Y>
struct SaddleProblem {
  Resolvent<X> prox_f;      // called with t = tau * lambda
  Resolvent<Y> prox_gstar;  // called with t = s
  LinearOp<X, Y> K;
  double lambda = 1.0;
};

/// One primal-dual step, i.e. T = (M + A)^{-1} M:
///   x+ = prox_f(x - tau K* y),  y+ = prox_g*(y + s K(2 x+ - x)).
template <typename X, typename Y>
PrimalDualPoint<X, Y> cp_step(const SaddleProblem<X, Y>& sp, const Preconditioner<X, Y>& P,
                              const PrimalDualPoint<X, Y>& u) {
  const X xt = u.x - P.tau() * sp.K.adjoint(u.y);
  X xp = sp.prox_f(xt, P.tau() * sp.lambda);
  const X extrap = 2.0 * xp - u.x;
  const Y yt = u.y + P.s() * sp.K(extrap);
  Y yp = sp.prox_gstar(yt, P.s());
  return {std::move(xp), std::move(yp)};
}

template <typename X, typename Y>
struct AnchoredStep {
  PrimalDualPoint<X, Y> next;
  /// Resolvent outputs before mixing with the anchor; equals T u up to
  /// round-off.
  PrimalDualPoint<X, Y> inner;
};

/// Anchored primal-dual step in the degenerate setting:
///   x_{k+1} = mu x_a + (1-mu) prox_f(x_k - tau K* y_k)
///   y_{k+1} = mu y_a + (1-mu) prox_g*(2sK(x_{k+1} - mu x_a)/(1-mu) - sK x_k + y_k)
/// with mu = mu_{k+1} in [0, 1).
template <typename X, typename Y>
AnchoredStep<X, Y> cp_step_anchored_detail(const SaddleProblem<X, Y>& sp,
                                           const Preconditioner<X, Y>& P,
                                           const PrimalDualPoint<X, Y>& u,
                                           const PrimalDualPoint<X, Y>& a, double mu_next) {
  if (!(mu_next >= 0.0 && mu_next < 1.0))
    throw std::invalid_argument("cp_step_anchored: mu_next must lie in [0,1)");
  if (mu_next == 0.0) {
    // The correction term collapses to sK(2x+ - x); reuse the plain step.
    PrimalDualPoint<X, Y> t = cp_step(sp, P, u);
    return {t, t};
  }
  const double tau = P.tau(), s = P.s();
  const X xt = u.x - tau * sp.K.adjoint(u.y);
  X xbar = sp.prox_f(xt, tau * sp.lambda);
  X x_next = mu_next * a.x + (1.0 - mu_next) * xbar;
  const X corrected = (x_next - mu_next * a.x) / (1.0 - mu_next);
  const Y yt = (2.0 * s) * sp.K(corrected) - s * sp.K(u.x) + u.y;
  Y ybar = sp.prox_gstar(yt, s);
  Y y_next = mu_next * a.y + (1.0 - mu_next) * ybar;
  return {{std::move(x_next), std::move(y_next)}, {std::move(xbar), std::move(ybar)}};
}

template <typename X, typename Y>
PrimalDualPoint<X, Y> cp_step_anchored(const SaddleProblem<X, Y>& sp,
                                       const Preconditioner<X, Y>& P,
                                       const PrimalDualPoint<X, Y>& u,
                                       const PrimalDualPoint<X, Y>& a, double mu_next) {
  return cp_step_anchored_detail(sp, P, u, a, mu_next).next;
}

/// Runs the anchored primal-dual recursion for n_iters steps with
/// mu_{k+1} = mu(k + 1). The fixed-point residual column uses the inner
/// resolvent outputs as T u^k.
template <typename X, typename Y>
IterationResult<PrimalDualPoint<X, Y>> hppp_saddle_iterate(
    const SaddleProblem<X, Y>& sp, const Preconditioner<X, Y>& P,
    const PrimalDualPoint<X, Y>& anchor, PrimalDualPoint<X, Y> u0, const Schedule& mu,
    long n_iters, const IterationOptions<PrimalDualPoint<X, Y>>& opts = {}) {
  using U = PrimalDualPoint<X, Y>;
  if (n_iters < 1) throw std::invalid_argument("hppp_saddle_iterate: n_iters must be >= 1");
  if (mu.role() != Schedule::Role::AnchorCoefficient)
    throw std::invalid_argument("hppp_saddle_iterate: schedule must be an anchor coefficient");
  IterationResult<U> res{std::move(u0), {}, 0};
  detail::Stopwatch clock;
  if (opts.observer) opts.observer(0, res.u);
  for (long k = 0; k < n_iters; ++k) {
    AnchoredStep<X, Y> step = cp_step_anchored_detail(sp, P, res.u, anchor, mu(k + 1));
    const bool stop =
        detail::record_step(res.trace, opts, k, n_iters, res.u, step.inner, step.next, clock);
    res.u = std::move(step.next);
    res.steps = k + 1;
    if (stop) break;
  }
  return res;
}

/// Power iteration on K*K from the given start; returns sqrt of the final
/// Rayleigh quotient. Stops early once the quotient changes by less than
/// tol (relative). Returns 0 when K annihilates the iterate.
template <typename X, typename Y>
double estimate_norm(const LinearOp<X, Y>& K, X start, int iters = 200, double tol = 1e-8) {
  if (iters < 1) throw std::invalid_argument("estimate_norm: iters must be >= 1");
  double n0 = norm(start);
  if (!(n0 > 0.0)) throw std::invalid_argument("estimate_norm: zero start vector");
  X v = (1.0 / n0) * start;
  double rayleigh = 0.0;
  for (int it = 0; it < iters; ++it) {
    const X w = K.adjoint(K(v));
    const double next = inner(v, w);
    const double nw = norm(w);
    if (!(nw > 0.0)) return 0.0;
    v = (1.0 / nw) * w;
    const bool converged = it > 0 && std::abs(next - rayleigh) <= tol * std::abs(next);
    rayleigh = next;
    if (converged) break;
  }
  return std::sqrt(std::max(rayleigh, 0.0));
}

/// Power iteration for operators on rows x cols images, started from a
/// seeded standard normal image.
template <typename Y>
double estimate_norm(const LinearOp<Image, Y>& K, Eigen::Index rows, Eigen::Index cols,
                     int iters = 200, double tol = 1e-8, std::uint64_t seed = 0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Image start(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) start(i, j) = normal(rng);
  return estimate_norm(K, std::move(start), iters, tol);
}

/// Largest violation of
///   ||Tu - Tv||_M^2 + ||(I-T)u - (I-T)v||_M^2 <= ||u - v||_M^2
/// over n_pairs sampled pairs (<= 0 means the inequality held everywhere).
template <typename X, typename Y, typename Map, typename Sampler>
double check_mfne(const Map& T, const Preconditioner<X, Y>& P, Sampler&& sampler, int n_pairs) {
  using U = PrimalDualPoint<X, Y>;
  if (n_pairs < 1) throw std::invalid_argument("check_mfne: n_pairs must be >= 1");
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_pairs; ++i) {
    const U u = sampler();
    const U v = sampler();
    const U Tu = T(u);
    const U Tv = T(v);
    const double lhs1 = inner(apply_M(P, U(Tu - Tv)), U(Tu - Tv));
    const U r = (u - Tu) - (v - Tv);
    const double lhs2 = inner(apply_M(P, r), r);
    const double rhs = inner(apply_M(P, U(u - v)), U(u - v));
    worst = std::max(worst, lhs1 + lhs2 - rhs);
  }
  return worst;
}

}  // namespace hppp
