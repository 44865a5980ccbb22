#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hexcassi/aperture.hpp"
#include "hexcassi/gpsr.hpp"
#include "hexcassi/metrics.hpp"
#include "hexcassi/spectral_cube.hpp"

namespace hexcassi {

struct ExperimentSpec {
  ApertureFamily family = ApertureFamily::BlueNoiseHex;
  std::size_t k = 2;
  double g = 0.5;
  bool complementary = true;
  double offset_a = 0.0;
  double noise_sigma = 0.0;
  std::vector<double> tau_grid{1e-4};
  std::vector<std::uint64_t> seeds{1};
  SolverConfig solver{};
  std::size_t wavelet_levels = 0;  // 0 = default for the scene size
  std::size_t threads = 0;         // 0 = hardware concurrency

  // Throws std::invalid_argument for inconsistent settings.
  void validate(const CubeDims& dims) const;
};

struct TauRun {
  double tau = 0.0;
  std::vector<Psnr> band_psnr;
  Psnr mean_psnr;
  std::size_t iterations = 0;
  double final_objective = 0.0;
  double wall_seconds = 0.0;
};

struct SeedRun {
  std::uint64_t seed = 0;
  double achieved_g = 0.0;  // mean code transmittance
  std::vector<TauRun> taus;  // grid order
  std::vector<SpectralCube> estimates;  // one per tau
  std::vector<std::vector<TraceEntry>> traces;
};

struct PipelineResult {
  ExperimentSpec spec;
  CubeDims dims;
  std::vector<SeedRun> runs;  // seed order
  // Mean over seeds of the mean PSNR at each tau, grid order.
  std::vector<double> tau_curve;
  std::size_t best_tau_index = 0;
  double best_tau = 0.0;
  // At best_tau, averaged over seeds.
  std::vector<double> mean_band_psnr;
  double mean_psnr = 0.0;

  ReconReport report(std::size_t run) const;
};

// For each seed: apertures -> code planes (grey at offset a for hex
// families) -> measurement -> one solve per tau -> per-band PSNR. The family
// tau is the grid entry with the best mean-over-seeds PSNR.
PipelineResult run_pipeline(const ExperimentSpec& spec, const SpectralCube& scene);

struct OffsetPoint {
  double offset_a = 0.0;
  double mean_psnr = 0.0;
  double best_tau = 0.0;
};

// run_pipeline repeated over `offsets` (bn-hex only).
std::vector<OffsetPoint> sweep_offset(const ExperimentSpec& spec, const SpectralCube& scene,
                                      const std::vector<double>& offsets);

// summary.csv, bands.csv, tau_curve.csv, and per seed seed_<s>/ with
// report.json, trace.csv and reconstruction PNGs at the family tau.
void write_pipeline_outputs(const std::filesystem::path& dir, const PipelineResult& result,
                            bool write_images = true);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<OffsetPoint>& curve);
std::string pipeline_json(const PipelineResult& result, int indent = 2);

}  // namespace hexcassi
