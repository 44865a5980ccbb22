#include "hexcassi/aperture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hexcassi/bluenoise.hpp"
#include "hexcassi/rng.hpp"

namespace hexcassi {

namespace {

constexpr std::string_view kFamilyNames[] = {"rand-sq", "bn-sq", "rand-hex", "bn-hex"};

void check_transmittance(double g) {
  if (!(g > 0.0 && g < 1.0)) {
    throw std::invalid_argument("transmittance g must lie strictly inside (0, 1), got " +
                                std::to_string(g));
  }
}

void check_dims(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("aperture dimensions must be >= 1");
}

BinaryMask all_allowed(std::size_t rows, std::size_t cols) {
  BinaryMask mask(rows, cols);
  for (std::size_t idx = 0; idx < mask.size(); ++idx) mask[idx] = 1;
  return mask;
}

BinaryMask bernoulli_mask(const BinaryMask& allowed, double g, std::uint64_t seed) {
  Rng rng(mix_seed(seed));
  BinaryMask out(allowed.rows(), allowed.cols());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    if (allowed[idx]) out[idx] = rng.bernoulli(g) ? 1 : 0;
  }
  return out;
}

std::size_t rounded_count(double g, std::size_t cells) {
  return static_cast<std::size_t>(std::llround(g * static_cast<double>(cells)));
}

}  // namespace

std::string_view family_name(ApertureFamily family) noexcept {
  return kFamilyNames[static_cast<std::size_t>(family)];
}

std::optional<ApertureFamily> parse_family(std::string_view name) noexcept {
  for (std::size_t f = 0; f < std::size(kFamilyNames); ++f) {
    if (kFamilyNames[f] == name) return static_cast<ApertureFamily>(f);
  }
  return std::nullopt;
}

std::size_t BinaryMask::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

double SquareAperture::transmittance() const noexcept {
  return bits.size() == 0 ? 0.0 : static_cast<double>(bits.count_ones()) / static_cast<double>(bits.size());
}

std::size_t HexAperture::valid_count() const noexcept {
  // Every column has N+1 cells; the (M+2)/2 even grid columns lose one.
  return (n + 1) * (m + 1) - (m + 2) / 2;
}

double HexAperture::transmittance() const noexcept {
  std::size_t ones = 0;
  for (std::size_t i = 0; i < bits.rows(); ++i) {
    for (std::size_t j = 0; j < bits.cols(); ++j) {
      if (valid(i, j) && bits(i, j)) ++ones;
    }
  }
  return static_cast<double>(ones) / static_cast<double>(valid_count());
}

BinaryMask hex_valid_mask(std::size_t n, std::size_t m) {
  BinaryMask mask(n + 1, m + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) mask(i, j) = HexAperture::valid(n, i, j) ? 1 : 0;
  }
  return mask;
}

SquareAperture ApertureSet::square(std::size_t k) const {
  if (is_hex(family)) throw std::logic_error("square(): aperture set holds hex masks");
  return {masks.at(k)};
}

HexAperture ApertureSet::hex(std::size_t k) const {
  if (!is_hex(family)) throw std::logic_error("hex(): aperture set holds square masks");
  return {n, m, masks.at(k)};
}

bool ApertureSet::is_partition() const {
  for (std::size_t i = 0; i < grid_rows(); ++i) {
    for (std::size_t j = 0; j < grid_cols(); ++j) {
      unsigned sum = 0;
      for (const auto& mask : masks) sum += mask(i, j);
      if (sum != (valid(i, j) ? 1u : 0u)) return false;
    }
  }
  return true;
}

SquareAperture gen_random_square(std::size_t n, std::size_t m, double g, std::uint64_t seed) {
  check_dims(n, m);
  check_transmittance(g);
  return {bernoulli_mask(all_allowed(n, m), g, seed)};
}

SquareAperture gen_bluenoise_square(std::size_t n, std::size_t m, double g, std::uint64_t seed) {
  check_dims(n, m);
  check_transmittance(g);
  return {void_and_cluster(all_allowed(n, m), rounded_count(g, n * m), mix_seed(seed))};
}

HexAperture gen_random_hex(std::size_t n, std::size_t m, double g, std::uint64_t seed) {
  check_dims(n, m);
  check_transmittance(g);
  return {n, m, bernoulli_mask(hex_valid_mask(n, m), g, seed)};
}

HexAperture gen_bluenoise_hex(std::size_t n, std::size_t m, double g, std::uint64_t seed) {
  check_dims(n, m);
  check_transmittance(g);
  // The (N+1) x (M+1) square pattern is generated with the withdrawn cells
  // excluded up front, so the count over valid cells is exact.
  const BinaryMask valid = hex_valid_mask(n, m);
  const HexAperture shape{n, m, valid};
  return {n, m, void_and_cluster(valid, rounded_count(g, shape.valid_count()), mix_seed(seed))};
}

ApertureSet gen_complementary_set(ApertureFamily family, std::size_t n, std::size_t m,
                                  std::size_t k, std::uint64_t seed) {
  check_dims(n, m);
  if (k < 2) throw std::invalid_argument("complementary sets need K >= 2");

  ApertureSet set;
  set.family = family;
  set.n = n;
  set.m = m;
  set.g = 1.0 / static_cast<double>(k);
  set.complementary = true;
  set.seed = seed;

  const BinaryMask valid = is_hex(family) ? hex_valid_mask(n, m) : all_allowed(n, m);
  set.masks.assign(k, BinaryMask(valid.rows(), valid.cols()));

  if (!is_blue_noise(family)) {
    Rng rng(mix_seed(seed));
    for (std::size_t idx = 0; idx < valid.size(); ++idx) {
      if (valid[idx]) set.masks[rng.below(k)][idx] = 1;
    }
    return set;
  }

  BinaryMask remaining = valid;
  std::size_t left = remaining.count_ones();
  for (std::size_t shot = 0; shot + 1 < k; ++shot) {
    const std::size_t count = static_cast<std::size_t>(
        std::llround(static_cast<double>(left) / static_cast<double>(k - shot)));
    BinaryMask mask = void_and_cluster(remaining, count, stream_seed(seed, shot));
    for (std::size_t idx = 0; idx < mask.size(); ++idx) {
      if (mask[idx]) remaining[idx] = 0;
    }
    left -= count;
    set.masks[shot] = std::move(mask);
  }
  set.masks[k - 1] = std::move(remaining);
  return set;
}

ApertureSet gen_aperture_set(ApertureFamily family, std::size_t n, std::size_t m, std::size_t k,
                             double g, bool complementary, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("aperture set needs K >= 1");
  check_transmittance(g);
  if (complementary) {
    if (std::abs(static_cast<double>(k) * g - 1.0) > 1e-9) {
      throw std::invalid_argument("complementary sets require K*g == 1 (K=" + std::to_string(k) +
                                  ", g=" + std::to_string(g) + ")");
    }
    return gen_complementary_set(family, n, m, k, seed);
  }

  ApertureSet set;
  set.family = family;
  set.n = n;
  set.m = m;
  set.g = g;
  set.complementary = false;
  set.seed = seed;
  for (std::size_t shot = 0; shot < k; ++shot) {
    const std::uint64_t s = stream_seed(seed, shot);
    switch (family) {
      case ApertureFamily::RandomSquare: set.masks.push_back(gen_random_square(n, m, g, s).bits); break;
      case ApertureFamily::BlueNoiseSquare: set.masks.push_back(gen_bluenoise_square(n, m, g, s).bits); break;
      case ApertureFamily::RandomHex: set.masks.push_back(gen_random_hex(n, m, g, s).bits); break;
      case ApertureFamily::BlueNoiseHex: set.masks.push_back(gen_bluenoise_hex(n, m, g, s).bits); break;
    }
  }
  return set;
}

}  // namespace hexcassi
