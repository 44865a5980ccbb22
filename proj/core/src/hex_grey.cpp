#include "hexcassi/hex_grey.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "binary_io.hpp"

namespace hexcassi {

namespace {
constexpr double kSqrt3 = 1.7320508075688772935;
constexpr std::string_view kMagic = "SGRY1";

void check_offset(double a) {
  if (!(a >= 0.0 && a < kMaxOffsetRatio)) {
    throw std::invalid_argument("offset ratio a must lie in [0, " + std::to_string(kMaxOffsetRatio) +
                                "), got " + std::to_string(a));
  }
}
}  // namespace

HexWeights type_weights(PixelType type, double a) {
  check_offset(a);
  if (type == PixelType::I) {
    const double corner = kSqrt3 / 24.0 + a / 2.0;
    return {1.0 - kSqrt3 / 12.0 - a, corner, corner};
  }
  const double left = 0.5 - kSqrt3 / 24.0 - a / 2.0;
  return {left, left, kSqrt3 / 12.0 + a};
}

double GreyAperture::mean() const noexcept {
  if (values_.empty()) return 0.0;
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

namespace {

// The eight grey levels a pixel of one type can take, indexed by the bits
// (b1 b2 b3) of its three hex elements. All-on is exactly 1 (the weights
// partition the pixel area).
std::array<double, 8> level_table(const HexWeights& w) {
  std::array<double, 8> t{};
  for (unsigned bits = 0; bits < 8; ++bits) {
    double v = 0.0;
    if (bits & 4u) v += w.w1;
    if (bits & 2u) v += w.w2;
    if (bits & 1u) v += w.w3;
    t[bits] = std::clamp(v, 0.0, 1.0);
  }
  t[7] = 1.0;
  return t;
}

}  // namespace

GreyAperture hex_to_grey(const HexAperture& hex, double a) {
  const std::size_t n = hex.n;
  const std::size_t m = hex.m;
  if (hex.bits.rows() != n + 1 || hex.bits.cols() != m + 1) {
    throw std::invalid_argument("hex_to_grey: hex grid must be (N+1) x (M+1)");
  }
  const auto type1 = level_table(type_weights(PixelType::I, a));
  const auto type2 = level_table(type_weights(PixelType::II, a));
  const auto& t = hex.bits;

  GreyAperture grey(n, m, a);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (column_type(j) == PixelType::I) {
        assert(hex.valid(i, j) && hex.valid(i, j + 1) && hex.valid(i + 1, j + 1));
        grey(i, j) = type1[(t(i, j) << 2) | (t(i, j + 1) << 1) | t(i + 1, j + 1)];
      } else {
        assert(hex.valid(i, j) && hex.valid(i + 1, j) && hex.valid(i, j + 1));
        grey(i, j) = type2[(t(i, j) << 2) | (t(i + 1, j) << 1) | t(i, j + 1)];
      }
    }
  }
  return grey;
}

GreyAperture square_as_grey(const SquareAperture& square) {
  GreyAperture grey(square.rows(), square.cols(), 0.0);
  for (std::size_t i = 0; i < square.rows(); ++i) {
    for (std::size_t j = 0; j < square.cols(); ++j) grey(i, j) = square.bits(i, j);
  }
  return grey;
}

std::vector<GreyAperture> code_planes(const ApertureSet& set, double a) {
  std::vector<GreyAperture> planes;
  planes.reserve(set.snapshots());
  for (std::size_t k = 0; k < set.snapshots(); ++k) {
    planes.push_back(is_hex(set.family) ? hex_to_grey(set.hex(k), a) : square_as_grey(set.square(k)));
  }
  return planes;
}

std::vector<GreyLevel> grey_histogram(const GreyAperture& grey) {
  std::map<double, std::size_t> counts;
  for (double v : grey.values()) ++counts[v];
  std::vector<GreyLevel> out;
  out.reserve(counts.size());
  for (const auto& [value, count] : counts) out.push_back({value, count});
  return out;
}

std::vector<std::uint8_t> encode_grey(const GreyAperture& grey) {
  detail::ByteWriter w;
  w.magic(kMagic);
  w.u32(static_cast<std::uint32_t>(grey.rows()));
  w.u32(static_cast<std::uint32_t>(grey.cols()));
  w.f64(grey.offset_a());
  for (double v : grey.values()) w.f32(static_cast<float>(v));
  return w.take();
}

GreyAperture decode_grey(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "SGRY1");
  r.expect_magic(kMagic);
  const std::uint32_t n = r.u32();
  const std::uint32_t m = r.u32();
  if (n == 0 || m == 0) r.fail("zero dimension in header");
  const double a = r.f64();
  if (!std::isfinite(a)) r.fail("non-finite offset ratio");
  r.expect_remaining(4 * static_cast<std::size_t>(n) * m);
  GreyAperture grey(n, m, a);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) grey(i, j) = r.f32();
  }
  return grey;
}

void save_grey(const std::filesystem::path& path, const GreyAperture& grey) {
  detail::write_file(path, encode_grey(grey));
}

GreyAperture load_grey(const std::filesystem::path& path) {
  return decode_grey(detail::read_file(path));
}

}  // namespace hexcassi
