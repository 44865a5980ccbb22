#pragma once

// Little-endian byte encoding shared by the SCUB1/SMEA1/SAPT1/SGRY1 formats.

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hexcassi/error.hpp"

namespace hexcassi::detail {

class ByteWriter {
 public:
  void magic(std::string_view m) { bytes_.insert(bytes_.end(), m.begin(), m.end()); }
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) bytes_.push_back(static_cast<std::uint8_t>(v >> s));
  }
  void u64(std::uint64_t v) {
    for (int s = 0; s < 64; s += 8) bytes_.push_back(static_cast<std::uint8_t>(v >> s));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(std::span<const std::uint8_t> b) { bytes_.insert(bytes_.end(), b.begin(), b.end()); }

  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, std::string_view format)
      : bytes_(bytes), format_(format) {}

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(std::string(format_) + ": " + what, pos_);
  }

  void expect_magic(std::string_view m) {
    need(m.size(), "magic");
    if (std::memcmp(bytes_.data() + pos_, m.data(), m.size()) != 0) fail("bad magic");
    pos_ += m.size();
  }
  std::uint8_t u8() {
    need(1, "u8");
    return bytes_[pos_++];
  }
  std::uint32_t u32() {
    need(4, "u32");
    std::uint32_t v = 0;
    for (int s = 0; s < 32; s += 8) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << s;
    return v;
  }
  std::uint64_t u64() {
    need(8, "u64");
    std::uint64_t v = 0;
    for (int s = 0; s < 64; s += 8) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << s;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::span<const std::uint8_t> raw(std::size_t n) {
    need(n, "payload");
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  // Checks that exactly `n` bytes remain before any payload is decoded.
  void expect_remaining(std::size_t n) const {
    if (remaining() < n) {
      fail("truncated payload: need " + std::to_string(n) + " bytes, have " +
           std::to_string(remaining()));
    }
    if (remaining() > n) fail(std::to_string(remaining() - n) + " trailing bytes");
  }

 private:
  void need(std::size_t n, const char* what) const {
    if (remaining() < n) fail(std::string("unexpected end of data reading ") + what);
  }

  std::span<const std::uint8_t> bytes_;
  std::string_view format_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace hexcassi::detail
