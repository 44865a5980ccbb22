#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hexcassi/aperture.hpp"
#include "hexcassi/hex_grey.hpp"
#include "hexcassi/linear_map.hpp"
#include "hexcassi/spectral_cube.hpp"

namespace hexcassi {

struct NoiseModel {
  enum class Kind { None, Gaussian };
  Kind kind = Kind::None;
  double sigma = 0.0;  // detector units
  std::uint64_t seed = 0;

  static NoiseModel none() { return {}; }
  static NoiseModel gaussian(double sigma, std::uint64_t seed) { return {Kind::Gaussian, sigma, seed}; }
};

// Discrete CASSI system matrix H = [H^1; ...; H^K]. Band l (0-based) is
// coded by T^k and displaced l detector columns to the right:
//   Y^k(i, j) = sum_l F(i, j - l, l) T^k(i, j - l),  0 <= j < M + L - 1,
// with out-of-range columns contributing nothing.
class ForwardOperator final : public LinearMap {
 public:
  ForwardOperator(CubeDims dims, std::span<const GreyAperture> codes);

  std::size_t rows() const override { return snapshots_ * dims_.detector_pixels(); }
  std::size_t cols() const override { return dims_.voxels(); }
  void apply(std::span<const double> f, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> f) const override;

  const CubeDims& dims() const noexcept { return dims_; }
  std::size_t snapshots() const noexcept { return snapshots_; }
  // Code value T^k(i, j).
  double code(std::size_t k, std::size_t i, std::size_t j) const {
    return codes_[k * dims_.plane() + j * dims_.rows + i];
  }

 private:
  CubeDims dims_;
  std::size_t snapshots_;
  std::vector<double> codes_;  // per shot, column-major N x M
};

// Noise-free H f followed by the noise model; planes in MeasurementSet layout.
MeasurementSet measure(const SpectralCube& cube, std::span<const GreyAperture> codes,
                       const NoiseModel& noise);
MeasurementSet measure(const ForwardOperator& op, const SpectralCube& cube, const NoiseModel& noise);

inline constexpr std::size_t kMaxDenseEntries = 10'000'000;

// Dense (K V) x (N M L) matrix written entry by entry from the index map;
// throws std::length_error above kMaxDenseEntries.
Eigen::MatrixXd materialize_H(const ForwardOperator& op);

}  // namespace hexcassi
