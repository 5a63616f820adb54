#pragma once

#include "hppp/image.hpp"
#include "hppp/schedule.hpp"
#include "hppp/trace.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace hppp {

/// Thrown when an iterate stops being finite. Carries the index k of the
/// step that produced it.
class DivergedError : public std::runtime_error {
 public:
  explicit DivergedError(long iteration)
      : std::runtime_error("iteration diverged (non-finite value) at step " +
                           std::to_string(iteration)),
        iteration_(iteration) {}
  long iteration() const { return iteration_; }

 private:
  long iteration_;
};

template <typename U>
struct IterationOptions {
  /// Record every stride-th row (the final step is always recorded).
  long stride = 1;
  /// Stop once ||T u^k - u^k|| < stop_tol. Off by default.
  std::optional<double> stop_tol;
  std::function<double(const U&)> seminorm;
  std::function<double(const U&)> objective;
  std::function<double(const U&)> psnr;
  /// Called with (0, u^0) and then (k+1, u^{k+1}) after every step.
  std::function<void(long, const U&)> observer;
};

template <typename U>
struct IterationResult {
  U u;
  RunTrace trace;
  long steps = 0;
};

namespace detail {

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Shared bookkeeping for one step u -> next with Tu = T(u).
template <typename U>
bool record_step(RunTrace& trace, const IterationOptions<U>& opts, long k, long n_iters,
                 const U& u, const U& Tu, const U& next, const Stopwatch& clock) {
  if (!all_finite(next)) throw DivergedError(k);
  const double fp = norm(U(Tu - u));
  // Norms can overflow even when every entry is finite.
  if (!std::isfinite(fp)) throw DivergedError(k);
  const bool stop = opts.stop_tol && fp < *opts.stop_tol;
  const long stride = opts.stride > 0 ? opts.stride : 1;
  if (k % stride == 0 || k == n_iters - 1 || stop) {
    const U gap = next - u;
    TraceRow row;
    row.iter = k;
    row.gap_norm = norm(gap);
    if (!std::isfinite(row.gap_norm)) throw DivergedError(k);
    row.fp_residual = fp;
    if (opts.seminorm) row.gap_seminorm = opts.seminorm(gap);
    if (opts.objective) row.objective = opts.objective(next);
    if (opts.psnr) row.psnr = opts.psnr(next);
    row.elapsed_ms = clock.elapsed_ms();
    trace.append(row);
  }
  if (opts.observer) opts.observer(k + 1, next);
  return stop;
}

}  // namespace detail

/// Relaxed preconditioned proximal point (Krasnosel'skii-Mann):
///   u^{k+1} = (1 - lambda_k) u^k + lambda_k T u^k.
template <typename U, typename Map>
IterationResult<U> ppp_iterate(const Map& T, U u0, const Schedule& relax, long n_iters,
                               const IterationOptions<U>& opts = {}) {
  if (n_iters < 1) throw std::invalid_argument("ppp_iterate: n_iters must be >= 1");
  if (relax.role() != Schedule::Role::RelaxationCoefficient)
    throw std::invalid_argument("ppp_iterate: schedule must be a relaxation coefficient");
  IterationResult<U> res{std::move(u0), {}, 0};
  detail::Stopwatch clock;
  if (opts.observer) opts.observer(0, res.u);
  for (long k = 0; k < n_iters; ++k) {
    const double lam = relax(k);
    const U Tu = T(res.u);
    U next = (1.0 - lam) * res.u + lam * Tu;
    const bool stop = detail::record_step(res.trace, opts, k, n_iters, res.u, Tu, next, clock);
    res.u = std::move(next);
    res.steps = k + 1;
    if (stop) break;
  }
  return res;
}

/// Halpern-type iteration anchored at a:
///   u^{k+1} = mu_{k+1} a + (1 - mu_{k+1}) T u^k.
template <typename U, typename Map>
IterationResult<U> hppp_iterate(const Map& T, const U& anchor, U u0, const Schedule& mu,
                                long n_iters, const IterationOptions<U>& opts = {}) {
  if (n_iters < 1) throw std::invalid_argument("hppp_iterate: n_iters must be >= 1");
  if (mu.role() != Schedule::Role::AnchorCoefficient)
    throw std::invalid_argument("hppp_iterate: schedule must be an anchor coefficient");
  IterationResult<U> res{std::move(u0), {}, 0};
  detail::Stopwatch clock;
  if (opts.observer) opts.observer(0, res.u);
  for (long k = 0; k < n_iters; ++k) {
    const double m = mu(k + 1);
    const U Tu = T(res.u);
    U next = m * anchor + (1.0 - m) * Tu;
    const bool stop = detail::record_step(res.trace, opts, k, n_iters, res.u, Tu, next, clock);
    res.u = std::move(next);
    res.steps = k + 1;
    if (stop) break;
  }
  return res;
}

}  // namespace hppp
