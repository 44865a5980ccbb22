#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace hexcassi {

// Symmlet-8 (least-asymmetric Daubechies, 8 vanishing moments) scaling
// filter, 16 taps, normalized so that sum h = sqrt(2) and sum h^2 = 1.
inline constexpr std::array<double, 16> kSymmlet8 = {
    0.001889950332769133186524419,  -0.000302920514725992201468494,
    -0.01495225833706159735951672,  0.003808752013899459285856223,
    0.04913717967372703979339612,   -0.02721902991711317303038278,
    -0.05194583810786053722177457,  0.3644418948362277725183479,
    0.7771857516996347420894698,    0.4813596512590048784991919,
    -0.06127335906784573424484366,  -0.143294238351266459907658,
    0.007607487324988557951683795,  0.03169508781152580660422836,
    -0.0005421323318030509219253659, -0.003382415951005796239440208,
};

// Quadrature-mirror wavelet filter g[t] = (-1)^t h[15 - t].
std::array<double, 16> symmlet8_highpass();

// One periodic analysis step on a length-n signal (n even): approximation
// to out[0, n/2), detail to out[n/2, n).
void dwt_step(std::span<const double> in, std::span<double> out);
// Exact inverse (and transpose) of dwt_step.
void idwt_step(std::span<const double> in, std::span<double> out);

// Separable multi-level orthonormal 2D DWT with periodic extension on a
// column-major rows x cols plane (element (i, j) at j*rows + i), Mallat
// layout with the coarsest approximation in the top-left block.
class Wavelet2D {
 public:
  // rows and cols must be powers of two with 2^levels <= min(rows, cols).
  Wavelet2D(std::size_t rows, std::size_t cols, std::size_t levels);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t levels() const noexcept { return levels_; }

  void forward(std::span<double> plane) const;
  void inverse(std::span<double> plane) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t levels_;
};

}  // namespace hexcassi
