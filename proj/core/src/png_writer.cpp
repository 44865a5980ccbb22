#include "hexcassi/png_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

#include <json.hpp>
#include <png.h>

#include "hexcassi/error.hpp"

namespace hexcassi {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

void write_gray8(const std::filesystem::path& path, std::size_t rows, std::size_t cols,
                 const std::vector<std::uint8_t>& pixels) {
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) throw Error("cannot open " + path.string() + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("libpng: cannot allocate write structures");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("libpng: failed writing " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(cols), static_cast<png_uint_32>(rows), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t i = 0; i < rows; ++i) {
    png_write_row(png, const_cast<png_bytep>(pixels.data() + i * cols));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

BandScaling write_band_png(const std::filesystem::path& path, const SpectralCube& cube, std::size_t band) {
  const auto data = cube.band(band);
  const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
  const BandScaling scale{*lo, *hi};
  const double span = scale.max - scale.min;
  std::vector<std::uint8_t> pixels(cube.rows() * cube.cols());
  for (std::size_t i = 0; i < cube.rows(); ++i) {
    for (std::size_t j = 0; j < cube.cols(); ++j) {
      const double v = span > 0.0 ? (cube(i, j, band) - scale.min) / span : 0.0;
      pixels[i * cube.cols() + j] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
    }
  }
  write_gray8(path, cube.rows(), cube.cols(), pixels);
  return scale;
}

std::vector<std::filesystem::path> write_cube_pngs(const std::filesystem::path& dir, const std::string& stem,
                                                   const SpectralCube& cube) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  nlohmann::ordered_json side;
  side["scaling"] = "min-max per band to 0..255";
  side["rows"] = cube.rows();
  side["cols"] = cube.cols();
  auto& bands = side["bands"] = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < cube.bands(); ++l) {
    const auto file = dir / (stem + "_band" + std::to_string(l) + ".png");
    const BandScaling s = write_band_png(file, cube, l);
    nlohmann::ordered_json b{{"band", l}, {"file", file.filename().string()}, {"min", s.min}, {"max", s.max}};
    if (!cube.wavelengths().empty()) b["wavelength_nm"] = cube.wavelengths()[l];
    bands.push_back(std::move(b));
    written.push_back(file);
  }
  const auto json_path = dir / (stem + ".json");
  std::ofstream out(json_path);
  if (!out) throw Error("cannot open " + json_path.string() + " for writing");
  out << side.dump(2) << '\n';
  written.push_back(json_path);
  return written;
}

}  // namespace hexcassi
