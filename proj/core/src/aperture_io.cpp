#include "hexcassi/aperture_io.hpp"

#include "binary_io.hpp"

namespace hexcassi {

namespace {
constexpr std::string_view kMagic = "SAPT1";

std::size_t packed_bytes(std::size_t bits) { return (bits + 7) / 8; }
}  // namespace

std::vector<std::uint8_t> encode_apertures(const ApertureSet& set) {
  detail::ByteWriter w;
  w.magic(kMagic);
  w.u8(static_cast<std::uint8_t>(set.family));
  w.u32(static_cast<std::uint32_t>(set.n));
  w.u32(static_cast<std::uint32_t>(set.m));
  w.u32(static_cast<std::uint32_t>(set.snapshots()));
  for (const auto& mask : set.masks) {
    std::vector<std::uint8_t> packed(packed_bytes(mask.size()), 0);
    for (std::size_t idx = 0; idx < mask.size(); ++idx) {
      if (mask[idx]) packed[idx / 8] |= static_cast<std::uint8_t>(0x80u >> (idx % 8));
    }
    w.raw(packed);
  }
  return w.take();
}

ApertureSet decode_apertures(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "SAPT1");
  r.expect_magic(kMagic);
  const std::uint8_t family = r.u8();
  if (family > 3) r.fail("unknown family byte " + std::to_string(family));
  ApertureSet set;
  set.family = static_cast<ApertureFamily>(family);
  set.n = r.u32();
  set.m = r.u32();
  const std::uint32_t k = r.u32();
  if (set.n == 0 || set.m == 0 || k == 0) r.fail("zero dimension in header");
  const std::size_t cells = set.grid_rows() * set.grid_cols();
  r.expect_remaining(k * packed_bytes(cells));

  std::size_t valid_ones = 0;
  for (std::uint32_t shot = 0; shot < k; ++shot) {
    const std::size_t start = r.offset();
    const auto packed = r.raw(packed_bytes(cells));
    BinaryMask mask(set.grid_rows(), set.grid_cols());
    for (std::size_t idx = 0; idx < cells; ++idx) {
      const bool bit = (packed[idx / 8] >> (7 - idx % 8)) & 1u;
      if (bit && !set.valid(idx / set.grid_cols(), idx % set.grid_cols())) {
        throw ParseError("SAPT1: invalid hex cell set in mask " + std::to_string(shot),
                         start + idx / 8);
      }
      mask[idx] = bit ? 1 : 0;
      valid_ones += bit;
    }
    set.masks.push_back(std::move(mask));
  }
  std::size_t valid_cells = cells;
  if (is_hex(set.family)) valid_cells = HexAperture{set.n, set.m, {}}.valid_count();
  set.g = static_cast<double>(valid_ones) / static_cast<double>(valid_cells * k);
  set.complementary = k >= 2 && set.is_partition();
  return set;
}

void save_apertures(const std::filesystem::path& path, const ApertureSet& set) {
  detail::write_file(path, encode_apertures(set));
}

ApertureSet load_apertures(const std::filesystem::path& path) {
  return decode_apertures(detail::read_file(path));
}

}  // namespace hexcassi
