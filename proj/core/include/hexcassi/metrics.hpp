#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "hexcassi/spectral_cube.hpp"

namespace hexcassi {

// PSNR in dB with peak 1.0. A zero-error band is reported as +inf with
// `infinite` set.
struct Psnr {
  double db = 0.0;
  bool infinite = false;
};

Psnr psnr(const SpectralCube& reference, const SpectralCube& estimate, std::size_t band);
std::vector<Psnr> band_psnr(const SpectralCube& reference, const SpectralCube& estimate);
// Arithmetic mean of the per-band values (mean of dB, not dB of mean MSE).
Psnr mean_psnr(const std::vector<Psnr>& per_band);

struct ReconReport {
  std::vector<Psnr> band_psnr;
  Psnr mean_psnr;
  std::size_t iterations = 0;
  double final_objective = 0.0;
  double tau = 0.0;
  double wall_seconds = 0.0;
};

}  // namespace hexcassi
