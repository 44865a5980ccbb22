#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hexcassi/aperture.hpp"

namespace hexcassi {

// Overlap pattern of a detector pixel with the hex lattice. Odd 1-based
// columns (even 0-based) are Type I, the others Type II.
enum class PixelType { I, II };

constexpr PixelType column_type(std::size_t col0) noexcept {
  return col0 % 2 == 0 ? PixelType::I : PixelType::II;
}

// Largest accepted offset ratio: the Type I own-element weight
// 1 - sqrt(3)/12 - a reaches zero here.
inline constexpr double kMaxOffsetRatio = 0.8557;

// Area fractions of the three hex elements covering one pixel.
// Type I:  (own, top-right, bottom-right).
// Type II: (top-left, bottom-left, right).
struct HexWeights {
  double w1;
  double w2;
  double w3;
};

// Requires 0 <= a < kMaxOffsetRatio.
HexWeights type_weights(PixelType type, double a);

// Equivalent grey-scale square code, N x M row-major, entries in [0, 1].
class GreyAperture {
 public:
  GreyAperture() = default;
  GreyAperture(std::size_t rows, std::size_t cols, double offset_a = 0.0)
      : rows_(rows), cols_(cols), offset_a_(offset_a), values_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double offset_a() const noexcept { return offset_a_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  std::span<const double> values() const noexcept { return values_; }
  double mean() const noexcept;

  friend bool operator==(const GreyAperture&, const GreyAperture&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  double offset_a_ = 0.0;
  std::vector<double> values_;
};

// Type I pixel (i,j): w1 T(i,j) + w2 T(i,j+1) + w3 T(i+1,j+1).
// Type II pixel (i,j): w1 T(i,j) + w2 T(i+1,j) + w3 T(i,j+1).
GreyAperture hex_to_grey(const HexAperture& hex, double a);

// Binary square mask viewed as a grey code (entries 0 or 1).
GreyAperture square_as_grey(const SquareAperture& square);

// Per-shot code planes for the forward model: grey-converted at offset `a`
// for hex families, the binary masks themselves for square families.
std::vector<GreyAperture> code_planes(const ApertureSet& set, double a);

struct GreyLevel {
  double value;
  std::size_t count;
};

// Distinct entry values (exact comparison), ascending.
std::vector<GreyLevel> grey_histogram(const GreyAperture& grey);

// SGRY1: "SGRY1", u32 N, u32 M, f64 a, then N*M f32 row-major.
std::vector<std::uint8_t> encode_grey(const GreyAperture& grey);
GreyAperture decode_grey(std::span<const std::uint8_t> bytes);
void save_grey(const std::filesystem::path& path, const GreyAperture& grey);
GreyAperture load_grey(const std::filesystem::path& path);

}  // namespace hexcassi
