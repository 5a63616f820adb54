#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hppp {

/// Shortest decimal text that reads back to the same double; infinities are
/// written as "inf" / "-inf".
std::string format_real(double v);

struct TraceRow {
  long iter = 0;
  double gap_norm = 0.0;                   // ||u^{k+1} - u^k||
  std::optional<double> gap_seminorm;      // ||u^{k+1} - u^k||_M
  double fp_residual = 0.0;                // ||T u^k - u^k||
  std::optional<double> objective;
  std::optional<double> psnr;              // dB, may be +inf
  double elapsed_ms = 0.0;
};

/// Per-iteration diagnostics owned by one driver invocation.
class RunTrace {
 public:
  /// Rejects non-increasing iteration indices and negative or non-finite
  /// norms.
  void append(const TraceRow& row);

  const std::vector<TraceRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  std::size_t size() const { return rows_.size(); }
  const TraceRow& back() const { return rows_.back(); }

  /// CSV with header iter,gap_norm,gap_seminorm,fp_residual,objective,psnr,elapsed_ms.
  /// With include_timing = false the elapsed_ms column is left empty so the
  /// output is a pure function of the inputs.
  void write_csv(std::ostream& out, bool include_timing = true) const;

 private:
  std::vector<TraceRow> rows_;
};

enum class TraceField { GapNorm, GapSeminorm, FpResidual };

class RateFitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares fit of log(value) against log(iter) over rows with
/// k_min <= iter <= k_max. A slope near -1 certifies O(1/k) decay.
LineFit rate_fit(const RunTrace& trace, TraceField field, long k_min, long k_max);

}  // namespace hppp
