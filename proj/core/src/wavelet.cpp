#include "hexcassi/wavelet.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

namespace hexcassi {

std::array<double, 16> symmlet8_highpass() {
  std::array<double, 16> g{};
  for (std::size_t t = 0; t < 16; ++t) g[t] = (t % 2 == 0 ? 1.0 : -1.0) * kSymmlet8[15 - t];
  return g;
}

namespace {
const std::array<double, 16> kHigh = symmlet8_highpass();
}  // namespace

void dwt_step(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size();
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t t = 0; t < 16; ++t) {
      const double x = in[(2 * k + t) % n];
      a += kSymmlet8[t] * x;
      d += kHigh[t] * x;
    }
    out[k] = a;
    out[half + k] = d;
  }
}

void idwt_step(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size();
  const std::size_t half = n / 2;
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    const double a = in[k];
    const double d = in[half + k];
    for (std::size_t t = 0; t < 16; ++t) out[(2 * k + t) % n] += kSymmlet8[t] * a + kHigh[t] * d;
  }
}

Wavelet2D::Wavelet2D(std::size_t rows, std::size_t cols, std::size_t levels)
    : rows_(rows), cols_(cols), levels_(levels) {
  if (!std::has_single_bit(rows) || !std::has_single_bit(cols) || rows < 2 || cols < 2) {
    throw std::invalid_argument("Wavelet2D: spatial dimensions must be powers of two >= 2");
  }
  if (levels == 0 || (std::size_t{1} << levels) > std::min(rows, cols)) {
    throw std::invalid_argument("Wavelet2D: need 1 <= levels and 2^levels <= min(rows, cols)");
  }
}

void Wavelet2D::forward(std::span<double> plane) const {
  if (plane.size() != rows_ * cols_) throw std::invalid_argument("Wavelet2D: plane size mismatch");
  std::vector<double> line(std::max(rows_, cols_));
  std::vector<double> coef(std::max(rows_, cols_));
  for (std::size_t s = 0; s < levels_; ++s) {
    const std::size_t r = rows_ >> s;
    const std::size_t c = cols_ >> s;
    for (std::size_t j = 0; j < c; ++j) {
      double* col = plane.data() + j * rows_;
      std::copy(col, col + r, line.begin());
      dwt_step({line.data(), r}, {coef.data(), r});
      std::copy(coef.begin(), coef.begin() + static_cast<std::ptrdiff_t>(r), col);
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) line[j] = plane[j * rows_ + i];
      dwt_step({line.data(), c}, {coef.data(), c});
      for (std::size_t j = 0; j < c; ++j) plane[j * rows_ + i] = coef[j];
    }
  }
}

void Wavelet2D::inverse(std::span<double> plane) const {
  if (plane.size() != rows_ * cols_) throw std::invalid_argument("Wavelet2D: plane size mismatch");
  std::vector<double> line(std::max(rows_, cols_));
  std::vector<double> coef(std::max(rows_, cols_));
  for (std::size_t s = levels_; s-- > 0;) {
    const std::size_t r = rows_ >> s;
    const std::size_t c = cols_ >> s;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) coef[j] = plane[j * rows_ + i];
      idwt_step({coef.data(), c}, {line.data(), c});
      for (std::size_t j = 0; j < c; ++j) plane[j * rows_ + i] = line[j];
    }
    for (std::size_t j = 0; j < c; ++j) {
      double* col = plane.data() + j * rows_;
      std::copy(col, col + r, coef.begin());
      idwt_step({coef.data(), r}, {line.data(), r});
      std::copy(line.begin(), line.begin() + static_cast<std::ptrdiff_t>(r), col);
    }
  }
}

}  // namespace hexcassi
