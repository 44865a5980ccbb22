#include "hexcassi/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace hexcassi {

Psnr psnr(const SpectralCube& reference, const SpectralCube& estimate, std::size_t band) {
  if (reference.dims() != estimate.dims()) {
    throw std::invalid_argument("psnr: reference and estimate dimensions differ");
  }
  const auto r = reference.band(band);
  const auto e = estimate.band(band);
  double sse = 0.0;
  for (std::size_t p = 0; p < r.size(); ++p) {
    const double diff = r[p] - e[p];
    sse += diff * diff;
  }
  if (sse == 0.0) return {std::numeric_limits<double>::infinity(), true};
  const double mse = sse / static_cast<double>(r.size());
  return {10.0 * std::log10(1.0 / mse), false};
}

std::vector<Psnr> band_psnr(const SpectralCube& reference, const SpectralCube& estimate) {
  std::vector<Psnr> out;
  out.reserve(reference.bands());
  for (std::size_t l = 0; l < reference.bands(); ++l) out.push_back(psnr(reference, estimate, l));
  return out;
}

Psnr mean_psnr(const std::vector<Psnr>& per_band) {
  if (per_band.empty()) throw std::invalid_argument("mean_psnr: no bands");
  double sum = 0.0;
  for (const auto& p : per_band) {
    if (p.infinite) return {std::numeric_limits<double>::infinity(), true};
    sum += p.db;
  }
  return {sum / static_cast<double>(per_band.size()), false};
}

}  // namespace hexcassi
