#include "hppp/trace.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace hppp {

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void RunTrace::append(const TraceRow& row) {
  if (!rows_.empty() && row.iter <= rows_.back().iter)
    throw std::invalid_argument("RunTrace: iteration indices must increase");
  if (row.iter < 0) throw std::invalid_argument("RunTrace: negative iteration index");
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!ok(row.gap_norm) || !ok(row.fp_residual) || (row.gap_seminorm && !ok(*row.gap_seminorm)))
    throw std::invalid_argument("RunTrace: norms must be finite and nonnegative");
  rows_.push_back(row);
}

void RunTrace::write_csv(std::ostream& out, bool include_timing) const {
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  out << "iter,gap_norm,gap_seminorm,fp_residual,objective,psnr,elapsed_ms\n";
  for (const auto& r : rows_) {
    out << r.iter << ',' << format_real(r.gap_norm) << ',' << opt(r.gap_seminorm) << ','
        << format_real(r.fp_residual) << ',' << opt(r.objective) << ',' << opt(r.psnr) << ','
        << (include_timing ? format_real(r.elapsed_ms) : std::string()) << '\n';
  }
}

LineFit rate_fit(const RunTrace& trace, TraceField field, long k_min, long k_max) {
  if (k_min < 1 || k_max <= k_min) throw RateFitError("rate_fit: need 1 <= k_min < k_max");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n = 0;
  for (const auto& r : trace.rows()) {
    if (r.iter < k_min || r.iter > k_max) continue;
    double v = 0.0;
    switch (field) {
      case TraceField::GapNorm:
        v = r.gap_norm;
        break;
      case TraceField::FpResidual:
        v = r.fp_residual;
        break;
      case TraceField::GapSeminorm:
        if (!r.gap_seminorm) throw RateFitError("rate_fit: trace has no seminorm column");
        v = *r.gap_seminorm;
        break;
    }
    if (!(v > 0.0))
      throw RateFitError("rate_fit: nonpositive value at iteration " + std::to_string(r.iter));
    const double lx = std::log(static_cast<double>(r.iter));
    const double ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw RateFitError("rate_fit: fewer than two samples in window");
  const double denom = n * sxx - sx * sx;
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace hppp
