#include "hexcassi/bluenoise.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hexcassi/rng.hpp"

namespace hexcassi {

namespace {

struct Tap {
  std::ptrdiff_t di;
  std::ptrdiff_t dj;
  double w;
};

std::vector<Tap> gaussian_taps(const VoidAndClusterOptions& opt) {
  const auto r = static_cast<std::ptrdiff_t>(std::ceil(opt.kernel_radius_sigmas * opt.sigma));
  const double inv = 1.0 / (2.0 * opt.sigma * opt.sigma);
  std::vector<Tap> taps;
  for (std::ptrdiff_t di = -r; di <= r; ++di) {
    for (std::ptrdiff_t dj = -r; dj <= r; ++dj) {
      taps.push_back({di, dj, std::exp(-static_cast<double>(di * di + dj * dj) * inv)});
    }
  }
  return taps;
}

std::size_t wrap(std::ptrdiff_t v, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((v % m) + m) % m);
}

class EnergyField {
 public:
  EnergyField(std::size_t rows, std::size_t cols, std::vector<Tap> taps)
      : rows_(rows), cols_(cols), taps_(std::move(taps)), energy_(rows * cols, 0.0) {}

  void splat(std::size_t idx, double sign) {
    const auto i = static_cast<std::ptrdiff_t>(idx / cols_);
    const auto j = static_cast<std::ptrdiff_t>(idx % cols_);
    for (const Tap& t : taps_) {
      energy_[wrap(i + t.di, rows_) * cols_ + wrap(j + t.dj, cols_)] += sign * t.w;
    }
  }

  double operator[](std::size_t idx) const { return energy_[idx]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Tap> taps_;
  std::vector<double> energy_;
};

}  // namespace

BinaryMask void_and_cluster(const BinaryMask& allowed, std::size_t count, std::uint64_t seed,
                            const VoidAndClusterOptions& options) {
  if (options.sigma <= 0.0) throw std::invalid_argument("void_and_cluster: sigma must be > 0");
  const std::size_t rows = allowed.rows();
  const std::size_t cols = allowed.cols();

  std::vector<std::size_t> cells;
  for (std::size_t idx = 0; idx < allowed.size(); ++idx) {
    if (allowed[idx]) cells.push_back(idx);
  }
  const std::size_t total = cells.size();
  if (count > total) throw std::invalid_argument("void_and_cluster: count exceeds allowed cells");

  const bool invert = 2 * count > total;
  const std::size_t target = invert ? total - count : count;

  Rng rng(seed);
  for (std::size_t a = total; a > 1; --a) {
    std::swap(cells[a - 1], cells[rng.below(a)]);
  }

  BinaryMask pattern(rows, cols);
  EnergyField energy(rows, cols, gaussian_taps(options));
  for (std::size_t a = 0; a < target; ++a) {
    pattern[cells[a]] = 1;
    energy.splat(cells[a], +1.0);
  }

  if (target > 0 && target < total) {
    const std::size_t max_moves = 20 * total + 100;
    for (std::size_t move = 0; move < max_moves; ++move) {
      std::size_t cluster = 0;
      double hi = -std::numeric_limits<double>::infinity();
      for (std::size_t idx = 0; idx < pattern.size(); ++idx) {
        if (pattern[idx] && energy[idx] > hi) {
          hi = energy[idx];
          cluster = idx;
        }
      }
      pattern[cluster] = 0;
      energy.splat(cluster, -1.0);

      std::size_t vacancy = 0;
      double lo = std::numeric_limits<double>::infinity();
      for (std::size_t idx = 0; idx < pattern.size(); ++idx) {
        if (allowed[idx] && !pattern[idx] && energy[idx] < lo) {
          lo = energy[idx];
          vacancy = idx;
        }
      }
      pattern[vacancy] = 1;
      energy.splat(vacancy, +1.0);
      if (vacancy == cluster) break;
    }
  }

  if (invert) {
    for (std::size_t idx = 0; idx < pattern.size(); ++idx) {
      pattern[idx] = (allowed[idx] && !pattern[idx]) ? 1 : 0;
    }
  }
  return pattern;
}

double principal_wavelength(double g) {
  if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("principal_wavelength: g must be in (0,1)");
  return g <= 0.5 ? 1.0 / std::sqrt(g) : 1.0 / std::sqrt(1.0 - g);
}

BlueNoiseScore bluenoise_score(const BinaryMask& mask) {
  const std::size_t rows = mask.rows();
  const std::size_t cols = mask.cols();
  const std::size_t ones = mask.count_ones();
  if (ones == 0 || ones == mask.size()) {
    throw std::invalid_argument("bluenoise_score: constant mask has no AC spectrum");
  }
  if (ones == 1) throw std::invalid_argument("bluenoise_score: a single one has no nearest neighbor");

  BlueNoiseScore score;
  const double g = static_cast<double>(ones) / static_cast<double>(mask.size());
  score.principal_frequency = 1.0 / principal_wavelength(g);

  // Separable DFT of the zero-mean mask.
  using cd = std::complex<double>;
  auto twiddles = [](std::size_t n) {
    std::vector<cd> w(n);
    for (std::size_t k = 0; k < n; ++k) {
      w[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    }
    return w;
  };
  const auto wr = twiddles(rows);
  const auto wc = twiddles(cols);
  std::vector<cd> row_pass(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t kx = 0; kx < cols; ++kx) {
      cd acc = 0.0;
      for (std::size_t j = 0; j < cols; ++j) acc += (mask(i, j) - g) * wc[(kx * j) % cols];
      row_pass[i * cols + kx] = acc;
    }
  }
  double low = 0.0;
  double total = 0.0;
  const double cutoff = 0.5 * score.principal_frequency;
  for (std::size_t ky = 0; ky < rows; ++ky) {
    const double fy = (ky <= rows / 2 ? static_cast<double>(ky) : static_cast<double>(ky) - rows) /
                      static_cast<double>(rows);
    for (std::size_t kx = 0; kx < cols; ++kx) {
      if (kx == 0 && ky == 0) continue;
      cd acc = 0.0;
      for (std::size_t i = 0; i < rows; ++i) acc += row_pass[i * cols + kx] * wr[(ky * i) % rows];
      const double fx = (kx <= cols / 2 ? static_cast<double>(kx) : static_cast<double>(kx) - cols) /
                        static_cast<double>(cols);
      const double power = std::norm(acc);
      total += power;
      if (std::hypot(fx, fy) < cutoff) low += power;
    }
  }
  score.low_freq_energy_ratio = total > 0.0 ? low / total : 0.0;

  // Nearest neighbor by expanding Chebyshev rings on the torus.
  const auto R = static_cast<std::ptrdiff_t>(rows);
  const auto C = static_cast<std::ptrdiff_t>(cols);
  const std::ptrdiff_t max_ring = std::max(R, C);
  double sum = 0.0;
  for (std::ptrdiff_t i = 0; i < R; ++i) {
    for (std::ptrdiff_t j = 0; j < C; ++j) {
      if (!mask(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) continue;
      double best = std::numeric_limits<double>::infinity();
      for (std::ptrdiff_t r = 1; r <= max_ring && static_cast<double>(r) < best; ++r) {
        for (std::ptrdiff_t di = -r; di <= r; ++di) {
          for (std::ptrdiff_t dj = -r; dj <= r; ++dj) {
            if (std::max(std::abs(di), std::abs(dj)) != r) continue;
            if (di % R == 0 && dj % C == 0) continue;
            if (!mask(wrap(i + di, rows), wrap(j + dj, cols))) continue;
            best = std::min(best, std::hypot(static_cast<double>(di), static_cast<double>(dj)));
          }
        }
      }
      sum += best;
    }
  }
  score.mean_nn_distance = sum / static_cast<double>(ones);
  return score;
}

}  // namespace hexcassi
