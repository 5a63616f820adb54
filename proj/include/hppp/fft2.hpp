#pragma once

#include "hppp/image.hpp"

#include <unsupported/Eigen/FFT>

#include <complex>

namespace hppp {

template <typename Scalar>
using SpectrumT =
    Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Spectrum = SpectrumT<double>;

/// Unnormalized forward / normalized inverse 2D DFT over a periodic grid,
/// computed as row transforms followed by column transforms.
///
/// Eigen::FFT keeps plan caches as mutable state, so an Fft2 object must not
/// be shared between threads. Construct one per call site instead.
template <typename Scalar>
class Fft2 {
 public:
  using Complex = std::complex<Scalar>;

  SpectrumT<Scalar> forward(const ImageT<Scalar>& x) {
    SpectrumT<Scalar> out(x.rows(), x.cols());
    row_in_.resize(x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      row_in_ = x.row(i).transpose().matrix();
      fft_.fwd(row_out_, row_in_);
      out.row(i) = row_out_.transpose().array();
    }
    transform_columns(out, /*inverse=*/false);
    return out;
  }

  SpectrumT<Scalar> forward(const SpectrumT<Scalar>& z) {
    SpectrumT<Scalar> out = z;
    transform_rows(out, /*inverse=*/false);
    transform_columns(out, /*inverse=*/false);
    return out;
  }

  /// Inverse transform; the imaginary residue is discarded.
  ImageT<Scalar> inverse_real(SpectrumT<Scalar> z) {
    transform_columns(z, /*inverse=*/true);
    transform_rows(z, /*inverse=*/true);
    return z.real();
  }

  SpectrumT<Scalar> inverse(SpectrumT<Scalar> z) {
    transform_columns(z, /*inverse=*/true);
    transform_rows(z, /*inverse=*/true);
    return z;
  }

 private:
  using CVec = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
  using RVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  void transform_rows(SpectrumT<Scalar>& z, bool inverse) {
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      col_in_ = z.row(i).transpose().matrix();
      if (inverse)
        fft_.inv(col_out_, col_in_);
      else
        fft_.fwd(col_out_, col_in_);
      z.row(i) = col_out_.transpose().array();
    }
  }

  void transform_columns(SpectrumT<Scalar>& z, bool inverse) {
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      col_in_ = z.col(j).matrix();
      if (inverse)
        fft_.inv(col_out_, col_in_);
      else
        fft_.fwd(col_out_, col_in_);
      z.col(j) = col_out_.array();
    }
  }

  Eigen::FFT<Scalar> fft_;
  RVec row_in_;
  CVec row_out_;
  CVec col_in_;
  CVec col_out_;
};

}  // namespace hppp
