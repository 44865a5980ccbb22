#include "hexcassi/forward_model.hpp"

#include <stdexcept>
#include <string>

#include "hexcassi/rng.hpp"

namespace hexcassi {

ForwardOperator::ForwardOperator(CubeDims dims, std::span<const GreyAperture> codes)
    : dims_(dims), snapshots_(codes.size()) {
  if (dims_.voxels() == 0) throw std::invalid_argument("ForwardOperator: empty cube dimensions");
  if (codes.empty()) throw std::invalid_argument("ForwardOperator: need at least one code plane");
  codes_.resize(snapshots_ * dims_.plane());
  for (std::size_t k = 0; k < snapshots_; ++k) {
    const GreyAperture& c = codes[k];
    if (c.rows() != dims_.rows || c.cols() != dims_.cols) {
      throw std::invalid_argument("ForwardOperator: code plane " + std::to_string(k) + " is " +
                                  std::to_string(c.rows()) + "x" + std::to_string(c.cols()) +
                                  ", cube is " + std::to_string(dims_.rows) + "x" +
                                  std::to_string(dims_.cols));
    }
    for (std::size_t j = 0; j < dims_.cols; ++j) {
      for (std::size_t i = 0; i < dims_.rows; ++i) {
        const double v = c(i, j);
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("ForwardOperator: code entry outside [0,1]");
        codes_[k * dims_.plane() + j * dims_.rows + i] = v;
      }
    }
  }
}

void ForwardOperator::apply(std::span<const double> f, std::span<double> y) const {
  check_apply(f, y);
  const std::size_t n = dims_.rows;
  const std::size_t plane = dims_.plane();
  const std::size_t v = dims_.detector_pixels();
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t k = 0; k < snapshots_; ++k) {
    const double* code = codes_.data() + k * plane;
    double* out = y.data() + k * v;
    for (std::size_t l = 0; l < dims_.bands; ++l) {
      const double* band = f.data() + l * plane;
      for (std::size_t j = 0; j < dims_.cols; ++j) {
        double* dst = out + (j + l) * n;
        const double* src = band + j * n;
        const double* c = code + j * n;
        for (std::size_t i = 0; i < n; ++i) dst[i] += c[i] * src[i];
      }
    }
  }
}

void ForwardOperator::apply_adjoint(std::span<const double> y, std::span<double> f) const {
  check_adjoint(y, f);
  const std::size_t n = dims_.rows;
  const std::size_t plane = dims_.plane();
  const std::size_t v = dims_.detector_pixels();
  std::fill(f.begin(), f.end(), 0.0);
  for (std::size_t k = 0; k < snapshots_; ++k) {
    const double* code = codes_.data() + k * plane;
    const double* in = y.data() + k * v;
    for (std::size_t l = 0; l < dims_.bands; ++l) {
      double* band = f.data() + l * plane;
      for (std::size_t j = 0; j < dims_.cols; ++j) {
        const double* src = in + (j + l) * n;
        double* dst = band + j * n;
        const double* c = code + j * n;
        for (std::size_t i = 0; i < n; ++i) dst[i] += c[i] * src[i];
      }
    }
  }
}

MeasurementSet measure(const ForwardOperator& op, const SpectralCube& cube, const NoiseModel& noise) {
  if (cube.dims() != op.dims()) throw std::invalid_argument("measure: cube and operator dimensions differ");
  if (noise.sigma < 0.0) throw std::invalid_argument("measure: noise sigma must be >= 0");
  MeasurementSet out;
  out.snapshots = op.snapshots();
  out.rows = op.dims().rows;
  out.detector_cols = op.dims().detector_cols();
  out.values = op(cube.data());
  out.seed = noise.seed;
  if (noise.kind == NoiseModel::Kind::Gaussian) {
    out.noise_sigma = noise.sigma;
    if (noise.sigma > 0.0) {
      Rng rng(mix_seed(noise.seed));
      for (double& v : out.values) v += rng.normal(noise.sigma);
    }
  }
  return out;
}

MeasurementSet measure(const SpectralCube& cube, std::span<const GreyAperture> codes,
                       const NoiseModel& noise) {
  return measure(ForwardOperator(cube.dims(), codes), cube, noise);
}

Eigen::MatrixXd materialize_H(const ForwardOperator& op) {
  const std::size_t entries = op.rows() * op.cols();
  if (entries > kMaxDenseEntries) {
    throw std::length_error("materialize_H: " + std::to_string(entries) +
                            " entries exceeds the dense guard of " + std::to_string(kMaxDenseEntries));
  }
  const CubeDims& d = op.dims();
  const std::size_t v = d.detector_pixels();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(op.rows(), op.cols());
  for (std::size_t k = 0; k < op.snapshots(); ++k) {
    for (std::size_t l = 0; l < d.bands; ++l) {
      for (std::size_t j = 0; j < d.cols; ++j) {
        for (std::size_t i = 0; i < d.rows; ++i) {
          const auto row = static_cast<Eigen::Index>(k * v + (j + l) * d.rows + i);
          const auto col = static_cast<Eigen::Index>(voxel_index(d, i, j, l));
          h(row, col) = op.code(k, i, j);
        }
      }
    }
  }
  return h;
}

}  // namespace hexcassi
