#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hexcassi {

// Spatial and spectral extent of a cube: N rows, M columns, L bands.
struct CubeDims {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t bands = 0;

  std::size_t plane() const noexcept { return rows * cols; }
  std::size_t voxels() const noexcept { return rows * cols * bands; }
  // Detector width after dispersion: M + L - 1.
  std::size_t detector_cols() const noexcept { return cols + bands - 1; }
  // Pixels per snapshot on the detector, V = N (M + L - 1).
  std::size_t detector_pixels() const noexcept { return rows * detector_cols(); }

  friend bool operator==(const CubeDims&, const CubeDims&) = default;
};

// Repo-wide vectorization: q = l*N*M + j*N + i (band, then column, then row).
constexpr std::size_t voxel_index(const CubeDims& d, std::size_t i, std::size_t j,
                                  std::size_t l) noexcept {
  return l * d.rows * d.cols + j * d.rows + i;
}

struct VoxelCoord {
  std::size_t row;
  std::size_t col;
  std::size_t band;
};

constexpr VoxelCoord voxel_coord(const CubeDims& d, std::size_t q) noexcept {
  const std::size_t plane = d.rows * d.cols;
  return {(q % plane) % d.rows, (q % plane) / d.rows, q / plane};
}

// Default band centers for six-band scenes, in nm.
inline constexpr double kSixBandWavelengths[6] = {450.0, 485.0, 520.0, 554.0, 589.0, 624.0};

// N x M x L data cube. Voxels are stored in vectorization order, so
// `data()` is the vector f used by every operator.
class SpectralCube {
 public:
  SpectralCube() = default;
  explicit SpectralCube(CubeDims dims);
  SpectralCube(CubeDims dims, std::vector<double> voxels);

  const CubeDims& dims() const noexcept { return dims_; }
  std::size_t rows() const noexcept { return dims_.rows; }
  std::size_t cols() const noexcept { return dims_.cols; }
  std::size_t bands() const noexcept { return dims_.bands; }

  double& operator()(std::size_t i, std::size_t j, std::size_t l) {
    return voxels_[voxel_index(dims_, i, j, l)];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t l) const {
    return voxels_[voxel_index(dims_, i, j, l)];
  }

  std::span<double> data() noexcept { return voxels_; }
  std::span<const double> data() const noexcept { return voxels_; }
  std::span<const double> band(std::size_t l) const;

  // Optional; empty or exactly L entries.
  const std::vector<double>& wavelengths() const noexcept { return wavelengths_; }
  void set_wavelengths(std::vector<double> nm);

  // True when every voxel is finite and inside [0, 1].
  bool is_normalized() const;
  // Divide by the maximum voxel (no-op for an all-zero cube).
  void normalize();

  friend bool operator==(const SpectralCube&, const SpectralCube&) = default;

 private:
  CubeDims dims_{};
  std::vector<double> voxels_;
  std::vector<double> wavelengths_;
};

std::vector<double> vectorize(const SpectralCube& cube);
SpectralCube devectorize(const CubeDims& dims, std::span<const double> f);

// Snapshot planes of size N x (M + L - 1), concatenated as y = [y^1; ...; y^K],
// each plane in the same column-major order as a cube band.
struct MeasurementSet {
  std::size_t snapshots = 0;
  std::size_t rows = 0;
  std::size_t detector_cols = 0;
  std::vector<double> values;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  std::size_t plane_size() const noexcept { return rows * detector_cols; }
  std::span<const double> plane(std::size_t k) const {
    return std::span<const double>(values).subspan(k * plane_size(), plane_size());
  }
  double at(std::size_t k, std::size_t i, std::size_t j) const {
    return values[k * plane_size() + j * rows + i];
  }
};

}  // namespace hexcassi
