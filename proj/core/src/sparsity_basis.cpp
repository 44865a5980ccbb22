#include "hexcassi/sparsity_basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hexcassi {

std::size_t default_wavelet_levels(std::size_t rows, std::size_t cols) {
  const auto lg = static_cast<std::size_t>(std::bit_width(std::min(rows, cols)) - 1);
  return lg > 4 ? lg - 3 : 1;
}

BasisConfig make_basis_config(const CubeDims& dims) {
  return {dims.rows, dims.cols, dims.bands, default_wavelet_levels(dims.rows, dims.cols)};
}

SpectralDct::SpectralDct(std::size_t bands) : n_(bands), matrix_(bands * bands) {
  if (bands == 0) throw std::invalid_argument("SpectralDct: need at least one band");
  const double len = static_cast<double>(bands);
  for (std::size_t k = 0; k < n_; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / len) : std::sqrt(2.0 / len);
    for (std::size_t n = 0; n < n_; ++n) {
      matrix_[k * n_ + n] =
          scale * std::cos(std::numbers::pi * (2.0 * static_cast<double>(n) + 1.0) *
                           static_cast<double>(k) / (2.0 * len));
    }
  }
}

void SpectralDct::forward(std::span<const double> in, std::span<double> out) const {
  for (std::size_t k = 0; k < n_; ++k) {
    double s = 0.0;
    for (std::size_t n = 0; n < n_; ++n) s += matrix_[k * n_ + n] * in[n];
    out[k] = s;
  }
}

void SpectralDct::inverse(std::span<const double> in, std::span<double> out) const {
  for (std::size_t n = 0; n < n_; ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k < n_; ++k) s += matrix_[k * n_ + n] * in[k];
    out[n] = s;
  }
}

SparsityBasis::SparsityBasis(const BasisConfig& config)
    : dims_(config.dims()), wavelet_(config.rows, config.cols, config.levels), dct_(config.bands) {}

void SparsityBasis::spectral_forward(std::span<double> data) const {
  const std::size_t plane = dims_.plane();
  const std::size_t bands = dims_.bands;
  std::vector<double> in(bands), out(bands);
  for (std::size_t p = 0; p < plane; ++p) {
    for (std::size_t l = 0; l < bands; ++l) in[l] = data[l * plane + p];
    dct_.forward(in, out);
    for (std::size_t l = 0; l < bands; ++l) data[l * plane + p] = out[l];
  }
}

void SparsityBasis::spectral_inverse(std::span<double> data) const {
  const std::size_t plane = dims_.plane();
  const std::size_t bands = dims_.bands;
  std::vector<double> in(bands), out(bands);
  for (std::size_t p = 0; p < plane; ++p) {
    for (std::size_t l = 0; l < bands; ++l) in[l] = data[l * plane + p];
    dct_.inverse(in, out);
    for (std::size_t l = 0; l < bands; ++l) data[l * plane + p] = out[l];
  }
}

void SparsityBasis::spatial_forward(std::span<double> data) const {
  for (std::size_t l = 0; l < dims_.bands; ++l) wavelet_.forward(data.subspan(l * dims_.plane(), dims_.plane()));
}

void SparsityBasis::spatial_inverse(std::span<double> data) const {
  for (std::size_t l = 0; l < dims_.bands; ++l) wavelet_.inverse(data.subspan(l * dims_.plane(), dims_.plane()));
}

void SparsityBasis::apply(std::span<const double> theta, std::span<double> f) const {
  check_apply(theta, f);
  std::copy(theta.begin(), theta.end(), f.begin());
  spectral_inverse(f);
  spatial_inverse(f);
}

void SparsityBasis::apply_adjoint(std::span<const double> f, std::span<double> theta) const {
  check_adjoint(f, theta);
  std::copy(f.begin(), f.end(), theta.begin());
  spatial_forward(theta);
  spectral_forward(theta);
}

}  // namespace hexcassi
