#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace hexcassi {

enum class ApertureFamily : std::uint8_t {
  RandomSquare = 0,
  BlueNoiseSquare = 1,
  RandomHex = 2,
  BlueNoiseHex = 3,
};

std::string_view family_name(ApertureFamily family) noexcept;
std::optional<ApertureFamily> parse_family(std::string_view name) noexcept;
constexpr bool is_hex(ApertureFamily f) noexcept {
  return f == ApertureFamily::RandomHex || f == ApertureFamily::BlueNoiseHex;
}
constexpr bool is_blue_noise(ApertureFamily f) noexcept {
  return f == ApertureFamily::BlueNoiseSquare || f == ApertureFamily::BlueNoiseHex;
}

// Row-major 0/1 matrix (1 = pass).
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return bits_.size(); }

  std::uint8_t operator()(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j]; }
  std::uint8_t& operator()(std::size_t i, std::size_t j) { return bits_[i * cols_ + j]; }
  std::uint8_t operator[](std::size_t idx) const { return bits_[idx]; }
  std::uint8_t& operator[](std::size_t idx) { return bits_[idx]; }

  std::size_t count_ones() const noexcept;
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct SquareAperture {
  BinaryMask bits;  // N x M

  std::size_t rows() const noexcept { return bits.rows(); }
  std::size_t cols() const noexcept { return bits.cols(); }
  double transmittance() const noexcept;
};

// Hex lattice stored on an (N+1) x (M+1) grid. Grid column j (0-based) is a
// hex column; even j (odd 1-based columns) hold N elements, so their last row
// is an invalid cell that is always 0.
struct HexAperture {
  std::size_t n = 0;  // target rows N
  std::size_t m = 0;  // target cols M
  BinaryMask bits;    // (N+1) x (M+1)

  static constexpr bool valid(std::size_t n_rows, std::size_t i, std::size_t j) noexcept {
    return !(j % 2 == 0 && i == n_rows);
  }
  bool valid(std::size_t i, std::size_t j) const noexcept { return valid(n, i, j); }
  std::size_t valid_count() const noexcept;
  std::size_t invalid_count() const noexcept { return bits.size() - valid_count(); }
  // Ones over valid cells.
  double transmittance() const noexcept;
};

// Validity mask of the hex grid for target dims N x M.
BinaryMask hex_valid_mask(std::size_t n, std::size_t m);

// K masks of one family. For hex families each mask is (N+1) x (M+1).
struct ApertureSet {
  ApertureFamily family = ApertureFamily::RandomSquare;
  std::size_t n = 0;
  std::size_t m = 0;
  double g = 0.0;
  bool complementary = false;
  std::uint64_t seed = 0;
  std::vector<BinaryMask> masks;

  std::size_t snapshots() const noexcept { return masks.size(); }
  std::size_t grid_rows() const noexcept { return is_hex(family) ? n + 1 : n; }
  std::size_t grid_cols() const noexcept { return is_hex(family) ? m + 1 : m; }
  bool valid(std::size_t i, std::size_t j) const noexcept {
    return !is_hex(family) || HexAperture::valid(n, i, j);
  }
  SquareAperture square(std::size_t k) const;
  HexAperture hex(std::size_t k) const;
  // True when every valid cell is 1 in exactly one mask.
  bool is_partition() const;
};

SquareAperture gen_random_square(std::size_t n, std::size_t m, double g, std::uint64_t seed);
SquareAperture gen_bluenoise_square(std::size_t n, std::size_t m, double g, std::uint64_t seed);
HexAperture gen_random_hex(std::size_t n, std::size_t m, double g, std::uint64_t seed);
HexAperture gen_bluenoise_hex(std::size_t n, std::size_t m, double g, std::uint64_t seed);

// K masks with implied g = 1/K; every valid cell passes in exactly one shot.
// Random families draw an i.i.d. uniform shot label per cell; blue-noise
// families stack K-1 void-and-cluster passes on the still-unassigned cells
// and give the remainder to the last shot. The stacking is sequential.
ApertureSet gen_complementary_set(ApertureFamily family, std::size_t n, std::size_t m,
                                  std::size_t k, std::uint64_t seed);

// K independent masks at transmittance g (per-shot stream seeds), or the
// complementary construction when `complementary` is set, which requires
// K*g == 1.
ApertureSet gen_aperture_set(ApertureFamily family, std::size_t n, std::size_t m, std::size_t k,
                             double g, bool complementary, std::uint64_t seed);

}  // namespace hexcassi
