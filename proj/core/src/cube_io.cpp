#include "hexcassi/cube_io.hpp"

#include <fstream>
#include <iterator>

#include "binary_io.hpp"

namespace hexcassi {

namespace detail {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace detail

namespace {
constexpr std::string_view kCubeMagic = "SCUB1";
constexpr std::string_view kMeasMagic = "SMEA1";
}  // namespace

std::vector<std::uint8_t> encode_cube(const SpectralCube& cube) {
  detail::ByteWriter w;
  w.magic(kCubeMagic);
  w.u32(static_cast<std::uint32_t>(cube.rows()));
  w.u32(static_cast<std::uint32_t>(cube.cols()));
  w.u32(static_cast<std::uint32_t>(cube.bands()));
  w.u32(static_cast<std::uint32_t>(cube.wavelengths().size()));
  for (double nm : cube.wavelengths()) w.f32(static_cast<float>(nm));
  for (double v : cube.data()) w.f32(static_cast<float>(v));
  return w.take();
}

SpectralCube decode_cube(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "SCUB1");
  r.expect_magic(kCubeMagic);
  CubeDims dims;
  dims.rows = r.u32();
  dims.cols = r.u32();
  dims.bands = r.u32();
  if (dims.rows == 0 || dims.cols == 0 || dims.bands == 0) r.fail("zero dimension in header");
  const std::uint32_t w = r.u32();
  if (w != 0 && w != dims.bands) r.fail("wavelength count must be 0 or L");
  r.expect_remaining(4 * (static_cast<std::size_t>(w) + dims.voxels()));

  std::vector<double> nm(w);
  for (auto& x : nm) x = r.f32();
  std::vector<double> voxels(dims.voxels());
  for (auto& v : voxels) v = r.f32();
  SpectralCube cube(dims, std::move(voxels));
  cube.set_wavelengths(std::move(nm));
  return cube;
}

void save_cube(const std::filesystem::path& path, const SpectralCube& cube) {
  detail::write_file(path, encode_cube(cube));
}

SpectralCube load_cube(const std::filesystem::path& path) {
  return decode_cube(detail::read_file(path));
}

std::vector<std::uint8_t> encode_measurements(const MeasurementSet& m) {
  detail::ByteWriter w;
  w.magic(kMeasMagic);
  w.u32(static_cast<std::uint32_t>(m.snapshots));
  w.u32(static_cast<std::uint32_t>(m.rows));
  w.u32(static_cast<std::uint32_t>(m.detector_cols));
  for (double v : m.values) w.f32(static_cast<float>(v));
  return w.take();
}

MeasurementSet decode_measurements(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "SMEA1");
  r.expect_magic(kMeasMagic);
  MeasurementSet m;
  m.snapshots = r.u32();
  m.rows = r.u32();
  m.detector_cols = r.u32();
  if (m.snapshots == 0 || m.rows == 0 || m.detector_cols == 0) r.fail("zero dimension in header");
  const std::size_t count = m.snapshots * m.plane_size();
  r.expect_remaining(4 * count);
  m.values.resize(count);
  for (auto& v : m.values) v = r.f32();
  return m;
}

void save_measurements(const std::filesystem::path& path, const MeasurementSet& m) {
  detail::write_file(path, encode_measurements(m));
}

MeasurementSet load_measurements(const std::filesystem::path& path) {
  return decode_measurements(detail::read_file(path));
}

}  // namespace hexcassi
