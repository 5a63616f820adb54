#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hppp::cli {

struct CheckLine {
  std::string name;
  std::string measure;  // what `value` is, e.g. "max_residual"
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Suite names accepted by run_check_suite.
const std::vector<std::string>& check_suite_names();

/// Runs one suite ("all" runs every suite in order).
std::vector<CheckLine> run_check_suite(const std::string& suite, std::uint64_t seed);

}  // namespace hppp::cli
