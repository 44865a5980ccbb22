#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "hexcassi/spectral_cube.hpp"

namespace hexcassi {

struct BandScaling {
  double min = 0.0;
  double max = 0.0;
};

// 8-bit grayscale, value v -> round(255 (v - min) / (max - min)); a flat
// band maps to 0.
BandScaling write_band_png(const std::filesystem::path& path, const SpectralCube& cube, std::size_t band);

// <stem>_band<l>.png for every band plus <stem>.json holding the per-band
// scaling and wavelengths. Returns the files written.
std::vector<std::filesystem::path> write_cube_pngs(const std::filesystem::path& dir, const std::string& stem,
                                                   const SpectralCube& cube);

}  // namespace hexcassi
