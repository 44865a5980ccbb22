#pragma once

#include <cstddef>
#include <cstdint>

#include "hexcassi/aperture.hpp"

namespace hexcassi {

struct VoidAndClusterOptions {
  // Gaussian energy kernel width, pixels. Narrower kernels push g = 0.5
  // toward a checkerboard, which repeats itself under a two-column shift.
  double sigma = 1.5;
  double kernel_radius_sigmas = 4.0;
};

// Void-and-cluster initial-pattern phase on a toroidal grid: seed a random
// pattern with exactly `count` ones inside `allowed`, then repeatedly move the
// tightest-cluster one to the largest void until the move would be a no-op.
// Cells outside `allowed` stay 0 and do not exist for the energy field.
// When `count` exceeds half the allowed cells the minority (zeros) is
// optimized instead and the result inverted inside `allowed`.
BinaryMask void_and_cluster(const BinaryMask& allowed, std::size_t count, std::uint64_t seed,
                            const VoidAndClusterOptions& options = {});

struct BlueNoiseScore {
  // AC periodogram energy inside radius f_principal/2 over total AC energy.
  double low_freq_energy_ratio = 0.0;
  // Mean toroidal distance from each one to its nearest other one.
  double mean_nn_distance = 0.0;
  // f_principal = sqrt(g) for g <= 1/2, sqrt(1 - g) otherwise (cycles/pixel).
  double principal_frequency = 0.0;
};

// Principal wavelength of blue noise at density g: 1/sqrt(g) for g <= 1/2,
// 1/sqrt(1 - g) above.
double principal_wavelength(double g);

// Throws std::invalid_argument for all-zero or all-one masks and for masks
// with a single one (no nearest neighbor).
BlueNoiseScore bluenoise_score(const BinaryMask& mask);

}  // namespace hexcassi
