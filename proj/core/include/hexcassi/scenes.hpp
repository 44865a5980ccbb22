#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "hexcassi/spectral_cube.hpp"

namespace hexcassi {

enum class SceneKind { SmoothBlobs, TextEdges, SpectralRamps };

std::string_view scene_name(SceneKind kind) noexcept;
std::optional<SceneKind> parse_scene(std::string_view name) noexcept;

// Deterministic synthetic cube in [0, 1]. Each object carries a spectrum
// built from the first three band-DCT modes. Six-band cubes are labelled
// with the standard experiment wavelengths, others spread over 450-624 nm.
SpectralCube synth_scene(SceneKind kind, const CubeDims& dims, std::uint64_t seed);

}  // namespace hexcassi
