// hexcassi: command-line driver for aperture generation, reconstruction
// experiments and r-statistic checks.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexcassi/aperture.hpp"
#include "hexcassi/aperture_io.hpp"
#include "hexcassi/cube_io.hpp"
#include "hexcassi/error.hpp"
#include "hexcassi/experiment.hpp"
#include "hexcassi/format.hpp"
#include "hexcassi/hex_grey.hpp"
#include "hexcassi/png_writer.hpp"
#include "hexcassi/rip.hpp"
#include "hexcassi/scenes.hpp"

namespace fs = std::filesystem;
using namespace hexcassi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// Thrown for bad flag combinations the parser cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::size_t n = 64;
  std::size_t m = 64;
  std::size_t l = 6;
  std::size_t k = 2;
  double g = 0.5;
  std::vector<std::string> families{"bn-hex"};
  double offset_a = 0.0;
  double sigma = 0.0;
  std::vector<double> taus;
  std::vector<std::uint64_t> seeds;
  std::string out = "out";
  bool json = false;
  bool complementary = false;
};

const auto kOpenUnit = CLI::Validator(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (...) {
        return "not a number: " + s;
      }
      return (v > 0.0 && v < 1.0) ? std::string() : "value must lie strictly inside (0, 1)";
    },
    "(0,1)");

const auto kOffsetRange = CLI::Validator(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (...) {
        return "not a number: " + s;
      }
      return (v >= 0.0 && v < kMaxOffsetRatio) ? std::string() : "offset must lie in [0, 0.8557)";
    },
    "[0,0.8557)");

const auto kFamily = CLI::IsMember({"rand-sq", "bn-sq", "rand-hex", "bn-hex"});

void add_dims(CLI::App* app, Common& c, bool with_bands) {
  app->add_option("--n", c.n, "rows N")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--m", c.m, "columns M")->check(CLI::PositiveNumber)->capture_default_str();
  if (with_bands) app->add_option("--l", c.l, "bands L")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_code(CLI::App* app, Common& c) {
  app->add_option("--k", c.k, "snapshots K")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--g", c.g, "transmittance g")->check(kOpenUnit)->capture_default_str();
  app->add_option("--family", c.families, "aperture family (repeatable)")->check(kFamily)->capture_default_str();
  app->add_flag("--complementary", c.complementary, "complementary set, requires K*g = 1");
}

std::vector<std::uint64_t> seeds_or_default(const Common& c) {
  return c.seeds.empty() ? std::vector<std::uint64_t>{1, 2, 3, 4, 5} : c.seeds;
}

void require_kg(const Common& c) {
  if (c.complementary && std::abs(static_cast<double>(c.k) * c.g - 1.0) > 1e-9) {
    throw UsageError("--complementary requires K*g == 1 (K=" + std::to_string(c.k) + ", g=" + format_double(c.g) + ")");
  }
}

ApertureFamily family_arg(const std::string& s) {
  const auto f = parse_family(s);
  if (!f) throw UsageError("unknown family " + s);
  return *f;
}

// ---- generate -------------------------------------------------------------

int cmd_generate(const Common& c) {
  require_kg(c);
  nlohmann::ordered_json report = nlohmann::ordered_json::array();
  bool ok = true;
  fs::create_directories(c.out);
  for (const auto& fam_name : c.families) {
    const ApertureFamily fam = family_arg(fam_name);
    for (std::uint64_t seed : seeds_or_default(c)) {
      const ApertureSet set = gen_aperture_set(fam, c.n, c.m, c.k, c.g, c.complementary, seed);
      const fs::path file = fs::path(c.out) / (fam_name + "_seed" + std::to_string(seed) + ".sapt");
      bool verified = true;
      if (c.complementary) {
        const auto comp = complementarity_constant(set, 0.0);
        verified = is_hex(fam) ? comp.hex_elements_all_one : comp.all_one;
      }
      if (!verified) {
        ok = false;
        std::cerr << "generate: complementarity check failed for " << file.string() << '\n';
        continue;
      }
      save_apertures(file, set);

      nlohmann::ordered_json entry{{"file", file.string()}, {"family", fam_name}, {"seed", seed}};
      std::vector<double> per_mask;
      for (std::size_t k = 0; k < set.snapshots(); ++k) {
        per_mask.push_back(is_hex(fam) ? set.hex(k).transmittance() : set.square(k).transmittance());
      }
      entry["transmittance"] = per_mask;
      entry["complementary_verified"] = c.complementary;
      report.push_back(entry);
      if (!c.json) {
        std::cout << file.string() << ": K=" << set.snapshots() << " transmittance";
        for (double t : per_mask) std::cout << ' ' << format_double(t);
        std::cout << (c.complementary ? " (complementary, verified)" : "") << '\n';
      }
    }
  }
  if (c.json) std::cout << report.dump(2) << '\n';
  return ok ? kExitOk : kExitFailed;
}

// ---- pipeline / sweep --------------------------------------------------------

struct SceneArgs {
  std::string kind = "text-edges";
  std::string file;
  std::uint64_t seed = 1;
};

struct SolverArgs {
  std::size_t max_iters = 500;
  double tol = 1e-5;
  bool no_continuation = false;
  std::size_t threads = 0;
  bool no_images = false;
};

void add_scene(CLI::App* app, SceneArgs& s) {
  app->add_option("--scene", s.kind, "synthetic scene kind")
      ->check(CLI::IsMember({"smooth-blobs", "text-edges", "spectral-ramps"}))
      ->capture_default_str();
  app->add_option("--scene-file", s.file, "SCUB1 cube instead of a synthetic scene");
  app->add_option("--scene-seed", s.seed, "synthetic scene seed")->capture_default_str();
}

void add_solver(CLI::App* app, SolverArgs& s) {
  app->add_option("--max-iters", s.max_iters, "GPSR iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--tol", s.tol, "relative objective tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_flag("--no-continuation", s.no_continuation, "solve at the target tau directly");
  app->add_option("--threads", s.threads, "worker threads (0 = all cores)");
  app->add_flag("--no-images", s.no_images, "skip reconstruction PNGs");
}

SpectralCube load_scene(const Common& c, const SceneArgs& s) {
  if (!s.file.empty()) {
    SpectralCube cube = load_cube(s.file);
    if (!cube.is_normalized()) cube.normalize();
    return cube;
  }
  const auto kind = parse_scene(s.kind);
  if (!kind) throw UsageError("unknown scene kind " + s.kind);
  return synth_scene(*kind, {c.n, c.m, c.l}, s.seed);
}

std::vector<double> default_taus() { return {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}; }

ExperimentSpec make_spec(const Common& c, const SolverArgs& sa, ApertureFamily fam, const CubeDims& dims) {
  ExperimentSpec spec;
  spec.family = fam;
  spec.k = c.k;
  spec.g = c.g;
  spec.complementary = c.complementary;
  spec.offset_a = c.offset_a;
  spec.noise_sigma = c.sigma;
  spec.tau_grid = c.taus.empty() ? default_taus() : c.taus;
  spec.seeds = seeds_or_default(c);
  spec.solver.max_iters = sa.max_iters;
  spec.solver.tol = sa.tol;
  spec.solver.continuation = !sa.no_continuation;
  spec.threads = sa.threads;
  try {
    spec.validate(dims);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

int cmd_pipeline(const Common& c, const SceneArgs& sc, const SolverArgs& sa) {
  require_kg(c);
  const SpectralCube scene = load_scene(c, sc);
  std::vector<ExperimentSpec> specs;
  for (const auto& f : c.families) specs.push_back(make_spec(c, sa, family_arg(f), scene.dims()));

  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  std::string summary = "family,K,g,offset_a,tau,mean_psnr\n";
  for (const auto& spec : specs) {
    const PipelineResult r = run_pipeline(spec, scene);
    const std::string fam(family_name(spec.family));
    write_pipeline_outputs(fs::path(c.out) / fam, r, !sa.no_images);
    summary += fam + ',' + std::to_string(spec.k) + ',' + format_double(spec.g) + ',' +
               format_double(spec.offset_a) + ',' + format_double(r.best_tau) + ',' + format_double(r.mean_psnr) + '\n';
    if (c.json) {
      all.push_back(nlohmann::ordered_json::parse(pipeline_json(r)));
    } else {
      std::cout << fam << ": tau=" << format_double(r.best_tau) << " mean PSNR " << format_double(r.mean_psnr)
                << " dB over " << spec.seeds.size() << " seed(s)\n";
    }
  }
  std::ofstream(fs::path(c.out) / "families.csv") << summary;
  if (c.json) std::cout << all.dump(2) << '\n';
  return kExitOk;
}

int cmd_sweep(const Common& c, const SceneArgs& sc, const SolverArgs& sa, const std::vector<double>& grid) {
  require_kg(c);
  if (c.families.size() != 1 || c.families.front() != "bn-hex") {
    throw UsageError("sweep-offset runs the bn-hex family only");
  }
  const SpectralCube scene = load_scene(c, sc);
  const ExperimentSpec spec = make_spec(c, sa, ApertureFamily::BlueNoiseHex, scene.dims());
  const auto curve = sweep_offset(spec, scene, grid);
  fs::create_directories(c.out);
  write_sweep_csv(fs::path(c.out) / "sweep.csv", curve);

  std::size_t best = 0;
  for (std::size_t p = 1; p < curve.size(); ++p) {
    if (curve[p].mean_psnr > curve[best].mean_psnr) best = p;
  }
  const bool in_range = curve[best].offset_a > 0.0 && curve[best].offset_a < 0.6;
  if (c.json) {
    nlohmann::ordered_json j;
    auto& pts = j["curve"] = nlohmann::ordered_json::array();
    for (const auto& p : curve) pts.push_back({{"offset_a", p.offset_a}, {"mean_psnr", p.mean_psnr}, {"tau", p.best_tau}});
    j["argmax_a"] = curve[best].offset_a;
    j["argmax_in_0_0.6"] = in_range;
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& p : curve) {
      std::cout << "a=" << format_double(p.offset_a) << " mean PSNR " << format_double(p.mean_psnr) << " dB\n";
    }
    std::cout << "argmax a=" << format_double(curve[best].offset_a) << (in_range ? " (inside" : " (outside")
              << " (0, 0.6))\n";
  }
  return kExitOk;
}

// ---- rip-verify ---------------------------------------------------------------

int cmd_rip(const Common& c, std::size_t samples, std::size_t n_seeds, bool control) {
  if (std::abs(static_cast<double>(c.k) * c.g - 1.0) > 1e-9) {
    throw UsageError("rip-verify uses complementary sets and needs K*g == 1");
  }
  OrderingOptions opt;
  opt.n = c.n;
  opt.m = c.m;
  opt.g = c.g;
  opt.k = c.k;
  opt.bands = c.l;
  opt.offset_a = c.offset_a;
  opt.n_samples = samples;
  opt.n_seeds = c.seeds.empty() ? n_seeds : c.seeds.size();
  opt.seed = c.seeds.empty() ? 1 : c.seeds.front();
  const OrderingReport rep = control ? compare_families(opt, RFamily::SR, RFamily::SR) : verify_ordering(opt);

  // Complementarity of one generated set per family.
  nlohmann::ordered_json comp = nlohmann::ordered_json::object();
  for (ApertureFamily f : {ApertureFamily::RandomSquare, ApertureFamily::BlueNoiseSquare, ApertureFamily::BlueNoiseHex}) {
    const auto set = gen_aperture_set(f, c.n, c.m, c.k, c.g, true, opt.seed);
    const auto cr = complementarity_constant(set, c.offset_a);
    nlohmann::ordered_json e{{"min", cr.min}, {"mean", cr.mean}, {"max", cr.max}, {"all_one", cr.all_one}};
    if (cr.hex_elements_checked) e["hex_elements_all_one"] = cr.hex_elements_all_one;
    comp[std::string(family_name(f))] = e;
  }

  fs::create_directories(c.out);
  std::ofstream csv(fs::path(c.out) / "rip.csv");
  write_ordering_csv(csv, rep);
  auto j = nlohmann::ordered_json::parse(ordering_json(rep));
  j["complementarity"] = comp;
  std::ofstream(fs::path(c.out) / "rip.json") << j.dump(2) << '\n';

  if (c.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& r : rep.reports) {
      std::cout << rfamily_name(r.family) << ": mean r " << format_double(r.mean_r) << " +- "
                << format_double(r.stderr_r) << " (" << r.samples << " samples)\n";
    }
    for (std::size_t gi = 0; gi < rep.gaps.size(); ++gi) {
      std::cout << "gap " << gi << ": " << format_double(rep.gaps[gi]) << " vs 2se "
                << format_double(2.0 * rep.gap_stderrs[gi]) << '\n';
    }
    std::cout << "verdict: " << (rep.verdict ? "true" : "false") << '\n';
  }
  return rep.verdict ? kExitOk : kExitFailed;
}

// ---- synth-scene / info -----------------------------------------------------

int cmd_synth(const Common& c, const SceneArgs& sc, const std::string& png_dir) {
  const auto kind = parse_scene(sc.kind);
  if (!kind) throw UsageError("unknown scene kind " + sc.kind);
  const std::uint64_t seed = c.seeds.empty() ? sc.seed : c.seeds.front();
  const SpectralCube cube = synth_scene(*kind, {c.n, c.m, c.l}, seed);
  fs::path file = c.out;
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  save_cube(file, cube);
  if (!png_dir.empty()) write_cube_pngs(png_dir, sc.kind, cube);
  if (c.json) {
    nlohmann::ordered_json j{{"file", file.string()}, {"kind", sc.kind}, {"N", c.n}, {"M", c.m}, {"L", c.l}, {"seed", seed}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << file.string() << ": " << sc.kind << ' ' << c.n << 'x' << c.m << 'x' << c.l << '\n';
  }
  return kExitOk;
}

int cmd_info(const std::string& path, bool json) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[5] = {};
  in.read(magic, 5);
  const std::string tag(magic, 5);
  nlohmann::ordered_json j{{"file", path}, {"format", tag}};
  if (tag == "SCUB1") {
    const auto cube = load_cube(path);
    j["N"] = cube.rows();
    j["M"] = cube.cols();
    j["L"] = cube.bands();
    j["wavelengths"] = cube.wavelengths();
    j["normalized"] = cube.is_normalized();
  } else if (tag == "SMEA1") {
    const auto ms = load_measurements(path);
    j["K"] = ms.snapshots;
    j["rows"] = ms.rows;
    j["detector_cols"] = ms.detector_cols;
  } else if (tag == "SAPT1") {
    const auto set = load_apertures(path);
    j["family"] = family_name(set.family);
    j["N"] = set.n;
    j["M"] = set.m;
    j["K"] = set.snapshots();
    j["g"] = set.g;
    j["complementary"] = set.complementary;
  } else if (tag == "SGRY1") {
    const auto grey = load_grey(path);
    j["N"] = grey.rows();
    j["M"] = grey.cols();
    j["offset_a"] = grey.offset_a();
    j["mean"] = grey.mean();
    j["levels"] = grey_histogram(grey).size();
  } else {
    throw Error(path + ": unrecognized file magic");
  }
  if (json) {
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& [key, value] : j.items()) std::cout << key << ": " << value.dump() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hexagonal blue-noise coded-aperture CASSI simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  SceneArgs scene;
  SolverArgs solver;
  app.add_option("--out", c.out, "output directory (file for synth-scene)")->capture_default_str();
  app.add_flag("--json", c.json, "machine-readable output on stdout");
  app.add_option("--seed", c.seeds, "seed (repeatable)");

  auto* gen = app.add_subcommand("generate", "write SAPT1 aperture sets");
  add_dims(gen, c, false);
  add_code(gen, c);

  auto* pipe = app.add_subcommand("pipeline", "generate, measure, reconstruct and score");
  add_dims(pipe, c, true);
  add_code(pipe, c);
  pipe->add_option("--offset-a", c.offset_a, "hex offset ratio a")->check(kOffsetRange);
  pipe->add_option("--sigma", c.sigma, "Gaussian detector noise sigma")->check(CLI::NonNegativeNumber);
  pipe->add_option("--tau", c.taus, "regularization weight (repeatable)")->check(CLI::PositiveNumber);
  add_scene(pipe, scene);
  add_solver(pipe, solver);

  std::vector<double> a_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  auto* sweep = app.add_subcommand("sweep-offset", "PSNR against the hex offset ratio a");
  add_dims(sweep, c, true);
  add_code(sweep, c);
  sweep->add_option("--a", a_grid, "offset values (repeatable)")->check(kOffsetRange);
  sweep->add_option("--sigma", c.sigma, "Gaussian detector noise sigma")->check(CLI::NonNegativeNumber);
  sweep->add_option("--tau", c.taus, "regularization weight (repeatable)")->check(CLI::PositiveNumber);
  add_scene(sweep, scene);
  add_solver(sweep, solver);

  std::size_t samples = 100'000;
  std::size_t n_seeds = 5;
  bool control = false;
  auto* rip = app.add_subcommand("rip-verify", "r-statistic ordering SR > SB > HB");
  add_dims(rip, c, true);
  rip->add_option("--k", c.k, "snapshots K")->check(CLI::PositiveNumber)->capture_default_str();
  rip->add_option("--g", c.g, "transmittance g")->check(kOpenUnit)->capture_default_str();
  rip->add_option("--offset-a", c.offset_a, "hex offset ratio a")->check(kOffsetRange);
  rip->add_option("--samples", samples, "pairs per seed")->check(CLI::Range(std::size_t{100}, std::size_t{100'000'000}))->capture_default_str();
  rip->add_option("--n-seeds", n_seeds, "seeds when --seed is not given")->check(CLI::PositiveNumber)->capture_default_str();
  rip->add_flag("--control", control, "compare SR against an independent SR draw");

  std::string png_dir;
  auto* synth = app.add_subcommand("synth-scene", "write a synthetic SCUB1 cube");
  add_dims(synth, c, true);
  synth->add_option("--kind", scene.kind, "scene kind")
      ->check(CLI::IsMember({"smooth-blobs", "text-edges", "spectral-ramps"}))
      ->capture_default_str();
  synth->add_option("--png", png_dir, "also write per-band PNGs here");

  std::string info_path;
  auto* info = app.add_subcommand("info", "describe a SCUB1/SMEA1/SAPT1/SGRY1 file");
  info->add_option("file", info_path, "file to inspect")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(c);
    if (*pipe) return cmd_pipeline(c, scene, solver);
    if (*sweep) return cmd_sweep(c, scene, solver, a_grid);
    if (*rip) return cmd_rip(c, samples, n_seeds, control);
    if (*synth) {
      if (app.get_option("--out")->count() == 0) c.out = scene.kind + ".scub";
      return cmd_synth(c, scene, png_dir);
    }
    if (*info) return cmd_info(info_path, c.json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
