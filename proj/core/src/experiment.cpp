#include "hexcassi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hexcassi/error.hpp"
#include "hexcassi/format.hpp"
#include "hexcassi/forward_model.hpp"
#include "hexcassi/hex_grey.hpp"
#include "hexcassi/png_writer.hpp"
#include "hexcassi/rng.hpp"
#include "hexcassi/sparsity_basis.hpp"

namespace hexcassi {

namespace {

// Re-throws failures tagged with the seed and stage.
template <typename F>
auto staged(std::uint64_t seed, const char* stage, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw Error("seed " + std::to_string(seed) + ", " + stage + ": " + e.what());
  }
}

SeedRun run_seed(const ExperimentSpec& spec, const SpectralCube& scene, const SparsityBasis& basis,
                 std::uint64_t seed) {
  const CubeDims& dims = scene.dims();
  SeedRun run;
  run.seed = seed;
  const ApertureSet set = staged(seed, "generate", [&] {
    return gen_aperture_set(spec.family, dims.rows, dims.cols, spec.k, spec.g, spec.complementary, seed);
  });
  const auto codes = staged(seed, "grey", [&] { return code_planes(set, spec.offset_a); });
  double g = 0.0;
  for (const auto& c : codes) g += c.mean();
  run.achieved_g = g / static_cast<double>(codes.size());

  const ForwardOperator H(dims, codes);
  const NoiseModel noise = spec.noise_sigma > 0.0
                               ? NoiseModel::gaussian(spec.noise_sigma, stream_seed(seed, 0x4E4F495345ULL))
                               : NoiseModel::none();
  const MeasurementSet y = staged(seed, "measure", [&] { return measure(H, scene, noise); });

  for (double tau : spec.tau_grid) {
    SolverConfig cfg = spec.solver;
    cfg.tau = tau;
    const auto t0 = std::chrono::steady_clock::now();
    const SolverResult res = staged(seed, "solve", [&] { return solve(y.values, H, basis, cfg); });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    SpectralCube est = devectorize(dims, basis(res.theta));
    est.set_wavelengths(scene.wavelengths());
    TauRun tr;
    tr.tau = tau;
    tr.band_psnr = band_psnr(scene, est);
    tr.mean_psnr = mean_psnr(tr.band_psnr);
    tr.iterations = res.iterations;
    tr.final_objective = res.objective;
    tr.wall_seconds = secs;
    run.taus.push_back(std::move(tr));
    run.estimates.push_back(std::move(est));
    run.traces.push_back(res.trace);
  }
  return run;
}

double finite_db(const Psnr& p) { return p.infinite ? std::numeric_limits<double>::infinity() : p.db; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
}

}  // namespace

void ExperimentSpec::validate(const CubeDims& dims) const {
  if (seeds.empty()) throw std::invalid_argument("experiment: need at least one seed");
  if (tau_grid.empty()) throw std::invalid_argument("experiment: need at least one tau");
  if (k == 0) throw std::invalid_argument("experiment: K must be >= 1");
  if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("experiment: g must lie in (0, 1)");
  if (complementary && std::abs(static_cast<double>(k) * g - 1.0) > 1e-9) {
    throw std::invalid_argument("experiment: --complementary requires K*g == 1");
  }
  if (!(offset_a >= 0.0 && offset_a < kMaxOffsetRatio)) {
    throw std::invalid_argument("experiment: offset a must lie in [0, 0.8557)");
  }
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("experiment: noise sigma must be >= 0");
  for (double t : tau_grid) {
    if (!(t > 0.0)) throw std::invalid_argument("experiment: tau values must be > 0");
  }
  if (dims.bands < 1 || dims.rows < 2 || dims.cols < 2) {
    throw std::invalid_argument("experiment: scene too small");
  }
}

ReconReport PipelineResult::report(std::size_t run) const {
  const TauRun& tr = runs.at(run).taus.at(best_tau_index);
  return {tr.band_psnr, tr.mean_psnr, tr.iterations, tr.final_objective, tr.tau, tr.wall_seconds};
}

PipelineResult run_pipeline(const ExperimentSpec& spec, const SpectralCube& scene) {
  const CubeDims& dims = scene.dims();
  spec.validate(dims);
  BasisConfig bc = make_basis_config(dims);
  if (spec.wavelet_levels != 0) bc.levels = spec.wavelet_levels;
  const SparsityBasis basis(bc);

  PipelineResult out;
  out.spec = spec;
  out.dims = dims;
  out.runs.resize(spec.seeds.size());
  std::vector<std::exception_ptr> errors(spec.seeds.size());

  std::size_t workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, spec.seeds.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t s = next++; s < spec.seeds.size(); s = next++) {
      try {
        out.runs[s] = run_seed(spec, scene, basis, spec.seeds[s]);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const std::size_t n_tau = spec.tau_grid.size();
  const auto n_seeds = static_cast<double>(spec.seeds.size());
  out.tau_curve.assign(n_tau, 0.0);
  for (std::size_t t = 0; t < n_tau; ++t) {
    for (const auto& run : out.runs) out.tau_curve[t] += finite_db(run.taus[t].mean_psnr);
    out.tau_curve[t] /= n_seeds;
  }
  out.best_tau_index = static_cast<std::size_t>(
      std::max_element(out.tau_curve.begin(), out.tau_curve.end()) - out.tau_curve.begin());
  out.best_tau = spec.tau_grid[out.best_tau_index];
  out.mean_psnr = out.tau_curve[out.best_tau_index];
  out.mean_band_psnr.assign(dims.bands, 0.0);
  for (const auto& run : out.runs) {
    const auto& bp = run.taus[out.best_tau_index].band_psnr;
    for (std::size_t l = 0; l < dims.bands; ++l) out.mean_band_psnr[l] += finite_db(bp[l]) / n_seeds;
  }
  return out;
}

std::vector<OffsetPoint> sweep_offset(const ExperimentSpec& spec, const SpectralCube& scene,
                                      const std::vector<double>& offsets) {
  if (spec.family != ApertureFamily::BlueNoiseHex) {
    throw std::invalid_argument("sweep_offset: family must be bn-hex");
  }
  if (offsets.empty()) throw std::invalid_argument("sweep_offset: empty offset grid");
  for (double a : offsets) {
    if (!(a >= 0.0 && a < kMaxOffsetRatio)) {
      throw std::invalid_argument("sweep_offset: offset " + format_double(a) + " outside [0, 0.8557)");
    }
  }
  std::vector<OffsetPoint> curve;
  for (double a : offsets) {
    ExperimentSpec s = spec;
    s.offset_a = a;
    const PipelineResult r = run_pipeline(s, scene);
    curve.push_back({a, r.mean_psnr, r.best_tau});
  }
  return curve;
}

std::string pipeline_json(const PipelineResult& result, int indent) {
  using nlohmann::ordered_json;
  const auto& s = result.spec;
  ordered_json j;
  j["family"] = family_name(s.family);
  j["N"] = result.dims.rows;
  j["M"] = result.dims.cols;
  j["L"] = result.dims.bands;
  j["K"] = s.k;
  j["g"] = s.g;
  j["complementary"] = s.complementary;
  j["offset_a"] = s.offset_a;
  j["noise_sigma"] = s.noise_sigma;
  j["tau_grid"] = s.tau_grid;
  j["seeds"] = s.seeds;
  j["tau_curve"] = result.tau_curve;
  j["best_tau"] = result.best_tau;
  j["mean_psnr"] = result.mean_psnr;
  j["mean_band_psnr"] = result.mean_band_psnr;
  auto& runs = j["runs"] = ordered_json::array();
  for (std::size_t r = 0; r < result.runs.size(); ++r) {
    const ReconReport rep = result.report(r);
    std::vector<double> bands;
    for (const auto& p : rep.band_psnr) bands.push_back(finite_db(p));
    runs.push_back({{"seed", result.runs[r].seed},
                    {"achieved_g", result.runs[r].achieved_g},
                    {"tau", rep.tau},
                    {"band_psnr", bands},
                    {"mean_psnr", finite_db(rep.mean_psnr)},
                    {"iterations", rep.iterations},
                    {"final_objective", rep.final_objective}});
  }
  return j.dump(indent);
}

void write_pipeline_outputs(const std::filesystem::path& dir, const PipelineResult& result, bool write_images) {
  std::filesystem::create_directories(dir);
  const auto& s = result.spec;
  const std::string fam(family_name(s.family));

  std::string summary = "family,K,g,offset_a,tau,mean_psnr\n";
  summary += fam + ',' + std::to_string(s.k) + ',' + format_double(s.g) + ',' + format_double(s.offset_a) +
             ',' + format_double(result.best_tau) + ',' + format_double(result.mean_psnr) + '\n';
  write_text(dir / "summary.csv", summary);

  std::string bands = "band,wavelength_nm,mean_psnr\n";
  const auto& nm = result.runs.front().estimates.front().wavelengths();
  for (std::size_t l = 0; l < result.mean_band_psnr.size(); ++l) {
    bands += std::to_string(l) + ',' + (nm.empty() ? std::string() : format_double(nm[l])) + ',' +
             format_double(result.mean_band_psnr[l]) + '\n';
  }
  write_text(dir / "bands.csv", bands);

  std::string curve = "tau,mean_psnr\n";
  for (std::size_t t = 0; t < result.tau_curve.size(); ++t) {
    curve += format_double(s.tau_grid[t]) + ',' + format_double(result.tau_curve[t]) + '\n';
  }
  write_text(dir / "tau_curve.csv", curve);
  write_text(dir / "report.json", pipeline_json(result) + '\n');

  for (std::size_t r = 0; r < result.runs.size(); ++r) {
    const SeedRun& run = result.runs[r];
    const auto sub = dir / ("seed_" + std::to_string(run.seed));
    std::filesystem::create_directories(sub);
    std::ostringstream trace;
    write_trace_csv(trace, run.traces[result.best_tau_index]);
    write_text(sub / "trace.csv", trace.str());
    if (write_images) write_cube_pngs(sub, "recon", run.estimates[result.best_tau_index]);
  }
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<OffsetPoint>& curve) {
  std::string text = "offset_a,mean_psnr,tau\n";
  for (const auto& p : curve) {
    text += format_double(p.offset_a) + ',' + format_double(p.mean_psnr) + ',' + format_double(p.best_tau) + '\n';
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  write_text(path, text);
}

}  // namespace hexcassi
