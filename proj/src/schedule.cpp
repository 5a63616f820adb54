#include "hppp/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hppp/trace.hpp"

namespace hppp {

void Schedule::check_role_range(const Schedule& s) {
  // Relaxation coefficients must stay in (0, 2); anchor families already
  // live in (0, 1] by construction.
  if (s.role_ == Role::RelaxationCoefficient && s.family_ != Family::Constant) {
    const double first = s(0);
    if (!(first > 0.0 && first < 2.0))
      throw std::invalid_argument("Schedule: relaxation values must lie in (0,2)");
  }
}

Schedule Schedule::inverse_shift(double c, int k0, Role role) {
  if (k0 < 1) throw std::invalid_argument("Schedule inv-shift: k0 must be >= 1");
  if (!(c > 0.0 && c <= k0))
    throw std::invalid_argument("Schedule inv-shift: need 0 < c <= k0");
  Schedule s(Family::InverseShift, role, c, k0);
  check_role_range(s);
  return s;
}

Schedule Schedule::inverse_power(double alpha, Role role) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("Schedule inv-pow: alpha must lie in (0,1]");
  Schedule s(Family::InversePower, role, alpha, 0);
  check_role_range(s);
  return s;
}

Schedule Schedule::min_two_over_k(Role role) {
  return Schedule(Family::MinTwoOverK, role, 0, 0);
}

Schedule Schedule::constant(double v) {
  if (!(v > 0.0 && v < 2.0)) throw std::invalid_argument("Schedule const: v must lie in (0,2)");
  return Schedule(Family::Constant, Role::RelaxationCoefficient, v, 0);
}

double Schedule::operator()(long k) const {
  if (k < 0) throw std::out_of_range("Schedule: negative index");
  switch (family_) {
    case Family::InverseShift:
      return a_ / (static_cast<double>(k) + b_);
    case Family::InversePower:
      return 1.0 / std::pow(static_cast<double>(k) + 1.0, a_);
    case Family::MinTwoOverK:
      return k == 0 ? 1.0 : std::min(2.0 / static_cast<double>(k), 1.0);
    case Family::Constant:
      return a_;
  }
  return 0.0;
}

std::string Schedule::to_string() const {
  switch (family_) {
    case Family::InverseShift:
      return "inv-shift:" + format_real(a_) + ":" + format_real(b_);
    case Family::InversePower:
      return "inv-pow:" + format_real(a_);
    case Family::MinTwoOverK:
      return "min2k";
    case Family::Constant:
      return "const:" + format_real(a_);
  }
  return {};
}

namespace {

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("Schedule: bad number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

Schedule Schedule::parse(std::string_view text, Role role) {
  const auto parts = split(text, ':');
  const std::string_view head = parts.front();
  if (head == "inv-shift" && parts.size() == 3) {
    const double k0 = parse_real(parts[2]);
    if (k0 != std::floor(k0)) throw std::invalid_argument("Schedule inv-shift: k0 must be an integer");
    return inverse_shift(parse_real(parts[1]), static_cast<int>(k0), role);
  }
  if (head == "inv-pow" && parts.size() == 2) return inverse_power(parse_real(parts[1]), role);
  if (head == "min2k" && parts.size() == 1) return min_two_over_k(role);
  if (head == "const" && parts.size() == 2) {
    if (role != Role::RelaxationCoefficient)
      throw std::invalid_argument("Schedule const: only valid as a relaxation coefficient");
    return constant(parse_real(parts[1]));
  }
  if (parts.size() == 1 && role == Role::RelaxationCoefficient) return constant(parse_real(head));
  throw std::invalid_argument("Schedule: cannot parse '" + std::string(text) + "'");
}

}  // namespace hppp
