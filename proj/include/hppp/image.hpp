#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>

namespace hppp {

/// Row-major 2D grid of intensities. Rows index i (vertical), columns j.
template <typename Scalar>
using ImageT = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Image = ImageT<double>;

/// Pair of grids (p1, p2) living in the range of the discrete gradient.
/// p1 holds horizontal differences, p2 vertical ones.
template <typename Scalar>
struct DualFieldT {
  ImageT<Scalar> p1;
  ImageT<Scalar> p2;

  DualFieldT() = default;
  DualFieldT(ImageT<Scalar> a, ImageT<Scalar> b) : p1(std::move(a)), p2(std::move(b)) {
    if (p1.rows() != p2.rows() || p1.cols() != p2.cols())
      throw std::invalid_argument("DualField: component shapes differ");
  }

  static DualFieldT Zero(Eigen::Index rows, Eigen::Index cols) {
    return {ImageT<Scalar>::Zero(rows, cols), ImageT<Scalar>::Zero(rows, cols)};
  }

  Eigen::Index rows() const { return p1.rows(); }
  Eigen::Index cols() const { return p1.cols(); }

  DualFieldT& operator+=(const DualFieldT& o) {
    p1 += o.p1;
    p2 += o.p2;
    return *this;
  }
  DualFieldT& operator-=(const DualFieldT& o) {
    p1 -= o.p1;
    p2 -= o.p2;
    return *this;
  }
  DualFieldT& operator*=(Scalar c) {
    p1 *= c;
    p2 *= c;
    return *this;
  }
};

using DualField = DualFieldT<double>;

template <typename Scalar>
DualFieldT<Scalar> operator+(DualFieldT<Scalar> a, const DualFieldT<Scalar>& b) {
  return a += b;
}
template <typename Scalar>
DualFieldT<Scalar> operator-(DualFieldT<Scalar> a, const DualFieldT<Scalar>& b) {
  return a -= b;
}
template <typename Scalar>
DualFieldT<Scalar> operator-(DualFieldT<Scalar> a) {
  return a *= Scalar(-1);
}
template <typename Scalar>
DualFieldT<Scalar> operator*(Scalar c, DualFieldT<Scalar> a) {
  return a *= c;
}

// Vector-space primitives shared by scalars, images and dual fields. The
// iteration drivers are written against these overloads only.

inline double inner(double a, double b) { return a * b; }
inline double squared_norm(double a) { return a * a; }
inline bool all_finite(double a) { return std::isfinite(a); }

template <typename Scalar>
Scalar inner(const ImageT<Scalar>& a, const ImageT<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("inner: shape mismatch");
  return (a * b).sum();
}
template <typename Scalar>
Scalar squared_norm(const ImageT<Scalar>& a) {
  return a.matrix().squaredNorm();
}
template <typename Scalar>
bool all_finite(const ImageT<Scalar>& a) {
  return a.allFinite();
}

template <typename Scalar>
Scalar inner(const DualFieldT<Scalar>& a, const DualFieldT<Scalar>& b) {
  return inner(a.p1, b.p1) + inner(a.p2, b.p2);
}
template <typename Scalar>
Scalar squared_norm(const DualFieldT<Scalar>& a) {
  return squared_norm(a.p1) + squared_norm(a.p2);
}
template <typename Scalar>
bool all_finite(const DualFieldT<Scalar>& a) {
  return a.p1.allFinite() && a.p2.allFinite();
}

template <typename T>
auto norm(const T& a) {
  using std::sqrt;
  return sqrt(squared_norm(a));
}

/// Forward differences with Neumann boundary: the last column of p1 and the
/// last row of p2 are zero.
template <typename Derived>
DualFieldT<typename Derived::Scalar> grad(const Eigen::ArrayBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = x.rows(), n = x.cols();
  DualFieldT<Scalar> p = DualFieldT<Scalar>::Zero(m, n);
  if (n > 1) p.p1.leftCols(n - 1) = x.rightCols(n - 1) - x.leftCols(n - 1);
  if (m > 1) p.p2.topRows(m - 1) = x.bottomRows(m - 1) - x.topRows(m - 1);
  return p;
}

/// Discrete divergence, defined as the negative adjoint of grad so that
/// <grad x, p> + <x, div p> = 0 holds exactly in exact arithmetic.
template <typename Scalar>
ImageT<Scalar> div(const DualFieldT<Scalar>& p) {
  const Eigen::Index m = p.rows(), n = p.cols();
  ImageT<Scalar> d = ImageT<Scalar>::Zero(m, n);
  if (n > 1) {
    d.col(0) += p.p1.col(0);
    d.middleCols(1, n - 2) += p.p1.middleCols(1, n - 2) - p.p1.middleCols(0, n - 2);
    d.col(n - 1) -= p.p1.col(n - 2);
  }
  if (m > 1) {
    d.row(0) += p.p2.row(0);
    d.middleRows(1, m - 2) += p.p2.middleRows(1, m - 2) - p.p2.middleRows(0, m - 2);
    d.row(m - 1) -= p.p2.row(m - 2);
  }
  return d;
}

/// Pointwise isotropic magnitude sqrt(p1^2 + p2^2).
template <typename Scalar>
ImageT<Scalar> magnitude(const DualFieldT<Scalar>& p) {
  return (p.p1.square() + p.p2.square()).sqrt();
}

/// Isotropic total variation sum_{ij} |grad x|_{ij}.
template <typename Derived>
typename Derived::Scalar total_variation(const Eigen::ArrayBase<Derived>& x) {
  return magnitude(grad(x)).sum();
}

}  // namespace hppp
