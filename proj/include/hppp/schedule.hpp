#pragma once

#include <string>
#include <string_view>

namespace hppp {

/// Step-size sequence for the fixed-point drivers.
///
/// Anchor families (Halpern mu_k) all satisfy mu_k -> 0, sum mu_k = inf and
/// either |mu_{k+1} - mu_k| / mu_k -> 0 or summable differences; parameters
/// are validated when the schedule is built, nothing is checked per step.
class Schedule {
 public:
  enum class Family { InverseShift, InversePower, MinTwoOverK, Constant };
  enum class Role { AnchorCoefficient, RelaxationCoefficient };

  /// mu_k = c / (k + k0), requires 0 < c <= k0 and k0 >= 1.
  static Schedule inverse_shift(double c, int k0, Role role = Role::AnchorCoefficient);
  /// mu_k = 1 / (k + 1)^alpha, alpha in (0, 1].
  static Schedule inverse_power(double alpha, Role role = Role::AnchorCoefficient);
  /// mu_0 = 1, mu_k = min(2/k, 1).
  static Schedule min_two_over_k(Role role = Role::AnchorCoefficient);
  /// lambda_k = v, relaxation only, v in (0, 2).
  static Schedule constant(double v);

  /// Parses `inv-shift:<c>:<k0>`, `inv-pow:<alpha>`, `min2k` or `const:<v>`.
  /// A bare number is accepted as `const:<v>`.
  static Schedule parse(std::string_view text, Role role);

  double operator()(long k) const;

  Family family() const { return family_; }
  Role role() const { return role_; }
  std::string to_string() const;

 private:
  Schedule(Family f, Role r, double a, double b) : family_(f), role_(r), a_(a), b_(b) {}
  static void check_role_range(const Schedule& s);

  Family family_;
  Role role_;
  double a_;  // c, alpha or v
  double b_;  // k0
};

}  // namespace hppp
