#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hexcassi/aperture.hpp"

namespace hexcassi {

// SAPT1: "SAPT1", u8 family, u32 N, u32 M, u32 K, then K masks over the
// family's grid (N x M, or (N+1) x (M+1) for hex with invalid cells as 0),
// each bit-packed row-major, most significant bit first, padded to a byte.
//
// The file carries no g or seed: decoding sets g to the mean valid-cell
// transmittance, `complementary` to whether the masks partition the valid
// cells, and seed to 0.
std::vector<std::uint8_t> encode_apertures(const ApertureSet& set);
ApertureSet decode_apertures(std::span<const std::uint8_t> bytes);
void save_apertures(const std::filesystem::path& path, const ApertureSet& set);
ApertureSet load_apertures(const std::filesystem::path& path);

}  // namespace hexcassi
