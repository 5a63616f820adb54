#pragma once

#include "hppp/fixed_point.hpp"
#include "hppp/primal_dual.hpp"
#include "hppp/schedule.hpp"

#include <iosfwd>
#include <vector>

namespace hppp {

// One-dimensional saddle problem
//   min_x max_y  x y + f(x) - g*(y),  f(x) = max(-x, 0),  g*(y) = y + indicator_[-1,0](y),
// whose saddle set is Omega = {(x, 0) : x >= 1}. With K = 1 and tau = s = 1
// the preconditioner M = [[1, -1], [-1, 1]] is degenerate and
// ||(x, y)||_M = |x - y|.

using ToyPoint = PrimalDualPoint<double, double>;

struct ToyConfig {
  ToyPoint anchor{0.0, 0.0};
  ToyPoint init{0.0, 0.0};
  /// Anchor coefficient for HPPP, relaxation coefficient for PPP.
  Schedule mu = Schedule::inverse_shift(1.0, 2);
  long n_iters = 1000;
};

enum class ToyAlgorithm { Ppp, Hppp };

SaddleProblem<double, double> toy_problem();
Preconditioner<double, double> toy_preconditioner(double tau = 1.0, double s = 1.0);

/// x+ = toy_prox_f(x - tau y, tau); y+ = toy_prox_gstar(y + s(2x+ - x), s).
ToyPoint toy_T(const ToyPoint& u, double tau = 1.0, double s = 1.0);

/// M-projection of a onto Omega: (1, 0) if x_a - y_a <= 1, else (x_a - y_a, 0).
ToyPoint toy_projection(const ToyPoint& a);

/// |x - y| for the degenerate toy preconditioner.
double toy_seminorm(const ToyPoint& w);

bool in_saddle_set(const ToyPoint& u, double tol);

struct ToyRun {
  std::vector<ToyPoint> trajectory;  // u^0 .. u^N
  ToyPoint limit_claim;
  RunTrace trace;
};

/// Runs PPP or HPPP on the toy problem (tau = s = 1). For HPPP the claimed
/// limit is toy_projection(anchor); for PPP it is the final iterate.
ToyRun toy_run(const ToyConfig& cfg, ToyAlgorithm algo);

/// CSV `iter,x,y`.
void write_trajectory_csv(std::ostream& out, const std::vector<ToyPoint>& trajectory);

}  // namespace hppp
