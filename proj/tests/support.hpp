#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

#include "hppp/image.hpp"
#include "hppp/imaging.hpp"

namespace testing {

inline hppp::Image normal_image(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng,
                                double sd = 1.0) {
  std::normal_distribution<double> n(0.0, sd);
  hppp::Image x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = n(rng);
  return x;
}

inline hppp::DualField normal_field(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng,
                                    double sd = 1.0) {
  return {normal_image(rows, cols, rng, sd), normal_image(rows, cols, rng, sd)};
}

inline Eigen::VectorXd flatten(const hppp::Image& x) {
  Eigen::VectorXd v(x.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  return v;
}

inline hppp::Image unflatten(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols) {
  hppp::Image x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = v(i * cols + j);
  return x;
}

/// Dense matrix of periodic convolution with a centered odd kernel, built
/// straight from the definition (k * x)_p = sum_m k_m x_{p - m}.
inline Eigen::MatrixXd convolution_matrix(const hppp::Image& kernel, Eigen::Index rows,
                                          Eigen::Index cols) {
  const Eigen::Index n = rows * cols;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  const Eigen::Index rr = kernel.rows() / 2, rc = kernel.cols() / 2;
  auto wrap = [](Eigen::Index i, Eigen::Index len) { return ((i % len) + len) % len; };
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index a = 0; a < kernel.rows(); ++a)
        for (Eigen::Index b = 0; b < kernel.cols(); ++b) {
          const Eigen::Index si = wrap(i - (a - rr), rows), sj = wrap(j - (b - rc), cols);
          A(i * cols + j, si * cols + sj) += kernel(a, b);
        }
  return A;
}

/// argmin over a uniform grid of step h on [lo, hi].
template <typename F>
double grid_argmin(F&& f, double lo, double hi, double h) {
  double best = lo, fbest = f(lo);
  const long n = static_cast<long>((hi - lo) / h);
  for (long i = 1; i <= n; ++i) {
    const double u = lo + i * h;
    const double fu = f(u);
    if (fu < fbest) {
      fbest = fu;
      best = u;
    }
  }
  return best;
}

}  // namespace testing
