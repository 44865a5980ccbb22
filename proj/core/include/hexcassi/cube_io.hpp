#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hexcassi/spectral_cube.hpp"

namespace hexcassi {

// SCUB1: "SCUB1", u32 N, M, L, u32 W (0 or L), W f32 wavelengths, then
// N*M*L f32 voxels in vectorization order. All little-endian.
std::vector<std::uint8_t> encode_cube(const SpectralCube& cube);
SpectralCube decode_cube(std::span<const std::uint8_t> bytes);
void save_cube(const std::filesystem::path& path, const SpectralCube& cube);
SpectralCube load_cube(const std::filesystem::path& path);

// SMEA1: "SMEA1", u32 K, N, Mc, then K*N*Mc f32, snapshot-major.
std::vector<std::uint8_t> encode_measurements(const MeasurementSet& m);
MeasurementSet decode_measurements(std::span<const std::uint8_t> bytes);
void save_measurements(const std::filesystem::path& path, const MeasurementSet& m);
MeasurementSet load_measurements(const std::filesystem::path& path);

}  // namespace hexcassi
