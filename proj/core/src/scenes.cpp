#include "hexcassi/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hexcassi/rng.hpp"

namespace hexcassi {

namespace {

constexpr std::string_view kSceneNames[] = {"smooth-blobs", "text-edges", "spectral-ramps"};

// Smooth positive spectrum: c0 + c1 cos(pi x) + c2 cos(2 pi x), x in [0, 1].
std::vector<double> random_spectrum(Rng& rng, std::size_t bands) {
  const double c0 = 0.45 + 0.35 * rng.uniform();
  const double c1 = 0.3 * (rng.uniform() - 0.5);
  const double c2 = 0.2 * (rng.uniform() - 0.5);
  std::vector<double> s(bands);
  for (std::size_t l = 0; l < bands; ++l) {
    const double x = bands > 1 ? static_cast<double>(l) / static_cast<double>(bands - 1) : 0.0;
    s[l] = std::max(0.0, c0 + c1 * std::cos(std::numbers::pi * x) + c2 * std::cos(2.0 * std::numbers::pi * x));
  }
  return s;
}

void smooth_blobs(SpectralCube& cube, Rng& rng) {
  const auto& d = cube.dims();
  const double scale = static_cast<double>(std::min(d.rows, d.cols));
  const std::size_t blobs = 10;
  for (std::size_t b = 0; b < blobs; ++b) {
    const double ci = rng.uniform() * static_cast<double>(d.rows);
    const double cj = rng.uniform() * static_cast<double>(d.cols);
    const double radius = scale * (0.06 + 0.14 * rng.uniform());
    const double amp = 0.35 + 0.4 * rng.uniform();
    const auto spec = random_spectrum(rng, d.bands);
    for (std::size_t j = 0; j < d.cols; ++j) {
      for (std::size_t i = 0; i < d.rows; ++i) {
        const double di = static_cast<double>(i) - ci;
        const double dj = static_cast<double>(j) - cj;
        const double w = amp * std::exp(-(di * di + dj * dj) / (2.0 * radius * radius));
        for (std::size_t l = 0; l < d.bands; ++l) cube(i, j, l) += w * spec[l];
      }
    }
  }
}

void text_edges(SpectralCube& cube, Rng& rng) {
  const auto& d = cube.dims();
  const auto background = random_spectrum(rng, d.bands);
  for (std::size_t l = 0; l < d.bands; ++l) {
    for (std::size_t j = 0; j < d.cols; ++j) {
      for (std::size_t i = 0; i < d.rows; ++i) cube(i, j, l) = 0.15 * background[l];
    }
  }
  // Glyph-like strokes: axis-aligned bars of a few pixels width.
  const std::size_t strokes = 24;
  for (std::size_t s = 0; s < strokes; ++s) {
    const bool horizontal = rng.bernoulli(0.5);
    const std::size_t thick = 1 + rng.below(std::max<std::size_t>(1, std::min(d.rows, d.cols) / 24));
    const std::size_t len = std::max<std::size_t>(2, (horizontal ? d.cols : d.rows) / (3 + rng.below(4)));
    const std::size_t h = horizontal ? thick : len;
    const std::size_t w = horizontal ? len : thick;
    const std::size_t i0 = rng.below(d.rows > h ? d.rows - h + 1 : 1);
    const std::size_t j0 = rng.below(d.cols > w ? d.cols - w + 1 : 1);
    const double amp = 0.5 + 0.45 * rng.uniform();
    const auto spec = random_spectrum(rng, d.bands);
    for (std::size_t j = j0; j < std::min(d.cols, j0 + w); ++j) {
      for (std::size_t i = i0; i < std::min(d.rows, i0 + h); ++i) {
        for (std::size_t l = 0; l < d.bands; ++l) cube(i, j, l) = amp * spec[l];
      }
    }
  }
}

void spectral_ramps(SpectralCube& cube, Rng& rng) {
  const auto& d = cube.dims();
  const auto left = random_spectrum(rng, d.bands);
  const auto right = random_spectrum(rng, d.bands);
  const double tilt = 0.3 * (rng.uniform() - 0.5);
  for (std::size_t j = 0; j < d.cols; ++j) {
    const double x = d.cols > 1 ? static_cast<double>(j) / static_cast<double>(d.cols - 1) : 0.0;
    for (std::size_t i = 0; i < d.rows; ++i) {
      const double y = d.rows > 1 ? static_cast<double>(i) / static_cast<double>(d.rows - 1) : 0.0;
      for (std::size_t l = 0; l < d.bands; ++l) {
        cube(i, j, l) = 0.8 * ((1.0 - x) * left[l] + x * right[l]) + tilt * (y - 0.5);
      }
    }
  }
}

}  // namespace

std::string_view scene_name(SceneKind kind) noexcept { return kSceneNames[static_cast<std::size_t>(kind)]; }

std::optional<SceneKind> parse_scene(std::string_view name) noexcept {
  for (std::size_t k = 0; k < std::size(kSceneNames); ++k) {
    if (kSceneNames[k] == name) return static_cast<SceneKind>(k);
  }
  return std::nullopt;
}

SpectralCube synth_scene(SceneKind kind, const CubeDims& dims, std::uint64_t seed) {
  SpectralCube cube(dims);
  Rng rng(mix_seed(seed));
  switch (kind) {
    case SceneKind::SmoothBlobs: smooth_blobs(cube, rng); break;
    case SceneKind::TextEdges: text_edges(cube, rng); break;
    case SceneKind::SpectralRamps: spectral_ramps(cube, rng); break;
  }
  for (double& v : cube.data()) v = std::clamp(v, 0.0, 1.0);

  std::vector<double> nm(dims.bands);
  if (dims.bands == 6) {
    std::copy(std::begin(kSixBandWavelengths), std::end(kSixBandWavelengths), nm.begin());
  } else {
    for (std::size_t l = 0; l < dims.bands; ++l) {
      nm[l] = dims.bands > 1 ? 450.0 + 174.0 * static_cast<double>(l) / static_cast<double>(dims.bands - 1) : 450.0;
    }
  }
  cube.set_wavelengths(std::move(nm));
  return cube;
}

}  // namespace hexcassi
