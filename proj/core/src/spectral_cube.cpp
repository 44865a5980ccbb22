#include "hexcassi/spectral_cube.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hexcassi {

namespace {

void check_dims(const CubeDims& d) {
  if (d.rows == 0 || d.cols == 0 || d.bands == 0) {
    throw std::invalid_argument("cube dimensions must be >= 1, got " + std::to_string(d.rows) +
                                "x" + std::to_string(d.cols) + "x" + std::to_string(d.bands));
  }
}

}  // namespace

SpectralCube::SpectralCube(CubeDims dims) : dims_(dims) {
  check_dims(dims_);
  voxels_.assign(dims_.voxels(), 0.0);
}

SpectralCube::SpectralCube(CubeDims dims, std::vector<double> voxels)
    : dims_(dims), voxels_(std::move(voxels)) {
  check_dims(dims_);
  if (voxels_.size() != dims_.voxels()) {
    throw std::invalid_argument("voxel count " + std::to_string(voxels_.size()) +
                                " does not match N*M*L = " + std::to_string(dims_.voxels()));
  }
}

std::span<const double> SpectralCube::band(std::size_t l) const {
  if (l >= dims_.bands) throw std::out_of_range("band index out of range");
  return std::span<const double>(voxels_).subspan(l * dims_.plane(), dims_.plane());
}

void SpectralCube::set_wavelengths(std::vector<double> nm) {
  if (!nm.empty() && nm.size() != dims_.bands) {
    throw std::invalid_argument("wavelength list must be empty or have one entry per band");
  }
  wavelengths_ = std::move(nm);
}

bool SpectralCube::is_normalized() const {
  return std::all_of(voxels_.begin(), voxels_.end(),
                     [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; });
}

void SpectralCube::normalize() {
  if (voxels_.empty()) return;
  const double peak = *std::max_element(voxels_.begin(), voxels_.end());
  if (peak <= 0.0) return;
  for (double& v : voxels_) v /= peak;
}

std::vector<double> vectorize(const SpectralCube& cube) {
  return {cube.data().begin(), cube.data().end()};
}

SpectralCube devectorize(const CubeDims& dims, std::span<const double> f) {
  return SpectralCube(dims, std::vector<double>(f.begin(), f.end()));
}

}  // namespace hexcassi
