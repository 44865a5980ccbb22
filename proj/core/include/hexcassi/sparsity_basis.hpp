#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hexcassi/linear_map.hpp"
#include "hexcassi/spectral_cube.hpp"
#include "hexcassi/wavelet.hpp"

namespace hexcassi {

struct BasisConfig {
  std::size_t rows = 0;    // N, power of two
  std::size_t cols = 0;    // M, power of two
  std::size_t bands = 0;   // L
  std::size_t levels = 0;  // J, 1 <= J, 2^J <= min(N, M)

  CubeDims dims() const noexcept { return {rows, cols, bands}; }
};

// log2(min(N, M)) - 3, at least 1: 3 at 64x64, 5 at 256x256.
std::size_t default_wavelet_levels(std::size_t rows, std::size_t cols);
BasisConfig make_basis_config(const CubeDims& dims);

// Orthonormal DCT-II along the band axis: D[k][n] = s_k cos(pi (2n+1) k / 2L).
class SpectralDct {
 public:
  explicit SpectralDct(std::size_t bands);
  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t k, std::size_t n) const { return matrix_[k * n_ + n]; }
  void forward(std::span<const double> in, std::span<double> out) const;
  void inverse(std::span<const double> in, std::span<double> out) const;

 private:
  std::size_t n_;
  std::vector<double> matrix_;
};

// Psi = (2D Symmlet-8 DWT)^T (x) (spectral DCT)^T as a square operator:
// apply() synthesizes f = Psi theta, apply_adjoint() analyzes theta = Psi^T f.
// Coefficient q = k*N*M + j*N + i holds DCT index k at wavelet position (i, j).
class SparsityBasis final : public LinearMap {
 public:
  explicit SparsityBasis(const BasisConfig& config);

  std::size_t rows() const override { return dims_.voxels(); }
  std::size_t cols() const override { return dims_.voxels(); }
  void apply(std::span<const double> theta, std::span<double> f) const override;
  void apply_adjoint(std::span<const double> f, std::span<double> theta) const override;

  std::vector<double> synthesize(std::span<const double> theta) const { return (*this)(theta); }
  std::vector<double> analyze(std::span<const double> f) const { return adjoint(f); }

  const CubeDims& dims() const noexcept { return dims_; }
  const Wavelet2D& wavelet() const noexcept { return wavelet_; }
  const SpectralDct& dct() const noexcept { return dct_; }

  // Spectral-only and spatial-only factors, exposed for separability checks.
  void spectral_forward(std::span<double> data) const;
  void spectral_inverse(std::span<double> data) const;
  void spatial_forward(std::span<double> data) const;
  void spatial_inverse(std::span<double> data) const;

 private:
  CubeDims dims_;
  Wavelet2D wavelet_;
  SpectralDct dct_;
};

}  // namespace hexcassi
