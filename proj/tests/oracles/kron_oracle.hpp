#pragma once

// Dense matrices for the wavelet x DCT basis, assembled from the filter
// taps and the DCT-II formula with Kronecker products.

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace oracle {

// sym8 reconstruction low-pass taps as tabulated by PyWavelets.
inline constexpr double kSym8[16] = {
    0.0018899503327594609,  -0.0003029205147213668, -0.01495225833704823,  0.003808752013890615,
    0.049137179673607506,   -0.027219029917056003,  -0.05194583810770904,  0.3644418948353314,
    0.7771857517005235,     0.4813596512583722,     -0.061273359067658524, -0.1432942383508097,
    0.007607487324917605,   0.03169508781149298,    -0.0005421323317911481, -0.0033824159510061256,
};

// One periodic analysis step as an n x n matrix: rows 0..n/2-1 are h at
// even shifts, rows n/2.. the matching high-pass g[t] = (-1)^t h[15 - t].
inline Eigen::MatrixXd analysis_step(std::size_t n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    for (std::size_t t = 0; t < 16; ++t) {
      const double g = (t % 2 == 0 ? 1.0 : -1.0) * kSym8[15 - t];
      w(k, (2 * k + t) % n) += kSym8[t];
      w(n / 2 + k, (2 * k + t) % n) += g;
    }
  }
  return w;
}

// Multi-level 2D analysis on a column-major rows x cols plane; level s acts
// on the top-left (rows >> s) x (cols >> s) block as (B kron A).
inline Eigen::MatrixXd analysis_2d(std::size_t rows, std::size_t cols, std::size_t levels) {
  const std::size_t n = rows * cols;
  Eigen::MatrixXd total = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t s = 0; s < levels; ++s) {
    const std::size_t r = rows >> s;
    const std::size_t c = cols >> s;
    const Eigen::MatrixXd a = analysis_step(r);
    const Eigen::MatrixXd b = analysis_step(c);
    Eigen::MatrixXd level = Eigen::MatrixXd::Identity(n, n);
    // Zero the block, then scatter (B kron A) into the block's plane positions.
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t i = 0; i < r; ++i) level(j * rows + i, j * rows + i) = 0.0;
    }
    for (std::size_t j1 = 0; j1 < c; ++j1) {
      for (std::size_t i1 = 0; i1 < r; ++i1) {
        for (std::size_t j2 = 0; j2 < c; ++j2) {
          for (std::size_t i2 = 0; i2 < r; ++i2) {
            level(j1 * rows + i1, j2 * rows + i2) = b(j1, j2) * a(i1, i2);
          }
        }
      }
    }
    total = level * total;
  }
  return total;
}

inline Eigen::MatrixXd dct2(std::size_t n) {
  Eigen::MatrixXd d(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = k == 0 ? std::sqrt(1.0 / static_cast<double>(n)) : std::sqrt(2.0 / static_cast<double>(n));
    for (std::size_t x = 0; x < n; ++x) {
      d(k, x) = s * std::cos(std::numbers::pi * (2.0 * static_cast<double>(x) + 1.0) * static_cast<double>(k) /
                             (2.0 * static_cast<double>(n)));
    }
  }
  return d;
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// Psi^T for voxel order q = l*N*M + plane index: (D kron I) (I kron W2D).
inline Eigen::MatrixXd analysis_3d(std::size_t rows, std::size_t cols, std::size_t bands, std::size_t levels) {
  const std::size_t plane = rows * cols;
  const Eigen::MatrixXd spatial = kron(Eigen::MatrixXd::Identity(bands, bands), analysis_2d(rows, cols, levels));
  const Eigen::MatrixXd spectral = kron(dct2(bands), Eigen::MatrixXd::Identity(plane, plane));
  return spectral * spatial;
}

}  // namespace oracle
