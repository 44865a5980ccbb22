// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
// with the measured value next to its pinned limit; the exit code is 0 only
// when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hexcassi/aperture.hpp"
#include "hexcassi/experiment.hpp"
#include "hexcassi/forward_model.hpp"
#include "hexcassi/gpsr.hpp"
#include "hexcassi/hex_grey.hpp"
#include "hexcassi/rip.hpp"
#include "hexcassi/scenes.hpp"
#include "hexcassi/sparsity_basis.hpp"
#include "oracles/hex_area_oracle.hpp"
#include "oracles/prox_grad_oracle.hpp"

using namespace hexcassi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> gaussian_vector(std::size_t n, std::mt19937_64& eng) {
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (double& x : v) x = nd(eng);
  return v;
}

constexpr ApertureFamily kFamilies[] = {ApertureFamily::RandomSquare, ApertureFamily::BlueNoiseSquare,
                                        ApertureFamily::RandomHex, ApertureFamily::BlueNoiseHex};

// Shared by criteria 7 and 8.
const std::vector<double> kTauGrid{1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
const std::vector<std::uint64_t> kSeeds{1, 2, 3, 4, 5};

ExperimentSpec e2e_spec(ApertureFamily family, std::size_t k) {
  ExperimentSpec s;
  s.family = family;
  s.k = k;
  s.g = 1.0 / static_cast<double>(k);
  s.complementary = true;
  s.tau_grid = kTauGrid;
  s.seeds = kSeeds;
  s.solver.continuation = true;
  return s;
}

SpectralCube e2e_scene() { return synth_scene(SceneKind::TextEdges, {64, 64, 6}, 1); }

Outcome operator_correctness() {
  const auto t0 = Clock::now();
  const CubeDims d{6, 6, 3};
  double worst = 0.0;
  std::size_t max_row = 0;
  bool banded = true;
  std::mt19937_64 eng(1);
  for (auto family : {ApertureFamily::RandomSquare, ApertureFamily::BlueNoiseHex}) {
    const auto set = gen_aperture_set(family, 6, 6, 2, 0.5, true, 3);
    const ForwardOperator op(d, code_planes(set, 0.0));
    const Eigen::MatrixXd h = materialize_H(op);
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      std::size_t nnz = 0;
      // Detector pixel (i, j) of shot k reads voxel (i, j - l, l) only.
      const auto pix = static_cast<std::size_t>(r) % d.detector_pixels();
      const std::size_t i = pix % d.rows;
      const std::size_t j = pix / d.rows;
      for (Eigen::Index c = 0; c < h.cols(); ++c) {
        if (h(r, c) == 0.0) continue;
        ++nnz;
        const auto v = voxel_coord(d, static_cast<std::size_t>(c));
        if (v.row != i || v.col + v.band != j) banded = false;
      }
      max_row = std::max(max_row, nnz);
    }
    for (int t = 0; t < 50; ++t) {
      const auto f = gaussian_vector(op.cols(), eng);
      const Eigen::VectorXd ref = h * Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(f.size()));
      const auto y = op(f);
      const Eigen::VectorXd got = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
      worst = std::max(worst, (got - ref).norm() / ref.norm());
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = worst <= 1e-12 && max_row <= d.bands && banded && secs < 1.0;
  return {pass, "max rel matvec error " + fmt("%.2e", worst) + " (<= 1e-12), max row nnz " +
                    std::to_string(max_row) + " (<= 3), band-diagonal " + (banded ? "yes" : "no") + ", " +
                    fmt("%.2f", secs) + " s (< 1 s)"};
}

Outcome adjoint_and_basis() {
  const auto t0 = Clock::now();
  const CubeDims d{32, 32, 6};
  const auto set = gen_aperture_set(ApertureFamily::BlueNoiseHex, 32, 32, 2, 0.5, true, 1);
  const ForwardOperator h(d, code_planes(set, 0.0));
  const SparsityBasis psi({32, 32, 6, 2});
  std::mt19937_64 eng(2);
  double adj = 0.0, rt = 0.0, pars = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto f = gaussian_vector(h.cols(), eng);
    const auto y = gaussian_vector(h.rows(), eng);
    const double lhs = dot(h(f), y);
    adj = std::max(adj, std::abs(lhs - dot(f, h.adjoint(y))) / std::abs(lhs));

    const auto theta = gaussian_vector(psi.cols(), eng);
    const auto syn = psi.synthesize(theta);
    const auto back = psi.analyze(syn);
    double num = 0.0;
    for (std::size_t q = 0; q < theta.size(); ++q) num += (back[q] - theta[q]) * (back[q] - theta[q]);
    rt = std::max(rt, std::sqrt(num) / norm2(theta));
    pars = std::max(pars, std::abs(norm2(syn) - norm2(theta)) / norm2(theta));
  }
  const double secs = seconds_since(t0);
  const bool pass = adj <= 1e-10 && rt <= 1e-10 && pars <= 1e-10 && secs < 5.0;
  return {pass, "adjoint " + fmt("%.2e", adj) + ", round trip " + fmt("%.2e", rt) + ", Parseval " +
                    fmt("%.2e", pars) + " (all <= 1e-10), " + fmt("%.2f", secs) + " s (< 5 s)"};
}

Outcome hex_geometry() {
  const auto t0 = Clock::now();
  double sum_err = 0.0;
  for (int s = 0; s <= 6; ++s) {
    for (auto type : {PixelType::I, PixelType::II}) {
      const auto w = type_weights(type, 0.1 * s);
      sum_err = std::max(sum_err, std::abs(w.w1 + w.w2 + w.w3 - 1.0));
    }
  }
  double mc_err = 0.0;
  const std::size_t n = 6;
  for (double a : {0.0, 0.3, 0.6}) {
    for (std::size_t hj : {2u, 3u}) {
      const std::size_t hi = 3;
      HexAperture hex{n, n, BinaryMask(n + 1, n + 1)};
      hex.bits(hi, hj) = 1;
      const auto grey = hex_to_grey(hex, a);
      for (std::size_t i = hi - 2; i <= hi + 1; ++i) {
        for (std::size_t j = hj - 2; j <= hj + 1; ++j) {
          const double mc = oracle::overlap_fraction(hi, hj, i, j, a, 1'000'000, 1000 * i + j);
          mc_err = std::max(mc_err, std::abs(grey(i, j) - mc));
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = sum_err <= 1e-15 && mc_err <= 2e-3 && secs < 60.0;
  return {pass, "weight sum error " + fmt("%.1e", sum_err) + " (<= 1e-15), stamp vs area oracle " +
                    fmt("%.2e", mc_err) + " (<= 2e-3), " + fmt("%.1f", secs) + " s (< 60 s)"};
}

Outcome expectation_ordering() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  for (auto [k, g] : {std::pair<std::size_t, double>{2, 0.5}, {4, 0.25}}) {
    OrderingOptions opt;
    opt.k = k;
    opt.g = g;
    const auto rep = verify_ordering(opt);
    pass = pass && rep.verdict && rep.sr_matches_closed_form;
    detail += "K=" + std::to_string(k) + ": ";
    for (const auto& r : rep.reports) {
      detail += std::string(rfamily_name(r.family)) + " " + fmt("%.5f", r.mean_r) + "+-" + fmt("%.5f", r.stderr_r) + " ";
    }
    detail += std::string("ordered ") + (rep.verdict ? "yes" : "no") + ", SR~Kg^2 " +
              (rep.sr_matches_closed_form ? "yes" : "no") + "; ";
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 120.0;
  return {pass, detail + fmt("%.1f", secs) + " s (< 120 s)"};
}

Outcome complementarity() {
  double check_secs = 0.0;
  bool pass = true;
  std::size_t sets = 0;
  for (auto family : kFamilies) {
    for (std::size_t k : {2u, 4u}) {
      const auto set = gen_complementary_set(family, 64, 64, k, 11);
      const auto t0 = Clock::now();
      const auto rep = complementarity_constant(set);
      // Binary check: square codes directly, hex codes at the element level.
      pass = pass && set.is_partition() && (is_hex(family) ? rep.hex_elements_all_one : rep.all_one);
      check_secs += seconds_since(t0);
      ++sets;
    }
  }
  pass = pass && check_secs < 1.0;
  return {pass, std::to_string(sets) + " sets (4 families, K=2 and 4) with C = 1 at every valid position: " +
                    (pass ? "yes" : "no") + ", check time " + fmt("%.3f", check_secs) + " s (< 1 s)"};
}

Outcome gpsr_correctness() {
  const auto t0 = Clock::now();
  auto monotone = [](const std::vector<TraceEntry>& tr) {
    for (std::size_t t = 1; t < tr.size(); ++t) {
      if (tr[t].objective > tr[t - 1].objective) return false;
    }
    return true;
  };
  bool all_monotone = true;

  std::mt19937_64 eng(5);
  const auto y = gaussian_vector(200, eng);
  const IdentityMap eye(200);
  SolverConfig cfg;
  cfg.tau = 0.5;
  cfg.tol = 1e-14;
  const auto soft = solve(y, eye, eye, cfg);
  all_monotone = all_monotone && monotone(soft.trace);
  double soft_err = 0.0;
  for (std::size_t q = 0; q < y.size(); ++q) {
    const double expect = std::copysign(std::max(std::abs(y[q]) - 0.5, 0.0), y[q]);
    soft_err = std::max(soft_err, std::abs(soft.theta[q] - expect));
  }

  // Small dense instance for the optimality gate and the reference objective.
  std::normal_distribution<double> nd(0.0, 1.0 / std::sqrt(40.0));
  Eigen::MatrixXd m(40, 60);
  for (Eigen::Index q = 0; q < m.size(); ++q) m.data()[q] = nd(eng);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(60);
  for (int t = 0; t < 6; ++t) x0(static_cast<Eigen::Index>(eng() % 60)) = 1.0 + std::abs(nd(eng));
  const Eigen::VectorXd yv = m * x0;
  const std::vector<double> ys(yv.data(), yv.data() + yv.size());
  const DenseMap a(m);
  SolverConfig small;
  small.tau = 0.01;
  small.tol = 1e-13;
  small.max_iters = 20000;
  const auto res = solve(ys, a, small);
  all_monotone = all_monotone && monotone(res.trace);
  std::vector<double> r(40);
  const auto at = a(res.theta);
  for (std::size_t q = 0; q < 40; ++q) r[q] = at[q] - ys[q];
  const auto g = a.adjoint(r);
  double off = 0.0, on = 0.0;
  for (std::size_t q = 0; q < 60; ++q) {
    if (res.theta[q] == 0.0) {
      off = std::max(off, std::abs(g[q]) / small.tau);
    } else {
      on = std::max(on, std::abs(g[q] + small.tau * std::copysign(1.0, res.theta[q])) / small.tau);
    }
  }
  const double ref = oracle::lasso_objective(m, yv, oracle::fista(m, yv, small.tau, 20000), small.tau);
  const double obj_gap = std::abs(res.objective - ref);

  // CASSI-sized runs, with and without continuation.
  const CubeDims d{32, 32, 6};
  const auto scene = synth_scene(SceneKind::TextEdges, d, 2);
  const auto set = gen_aperture_set(ApertureFamily::BlueNoiseHex, 32, 32, 2, 0.5, true, 2);
  const ForwardOperator h(d, code_planes(set, 0.0));
  const SparsityBasis psi({32, 32, 6, 2});
  const auto ycassi = h(scene.data());
  for (bool cont : {false, true}) {
    SolverConfig c;
    c.tau = 1e-3;
    c.continuation = cont;
    all_monotone = all_monotone && monotone(solve(ycassi, h, psi, c).trace);
  }

  const double secs = seconds_since(t0);
  const bool pass = soft_err <= 1e-8 && all_monotone && res.converged && off <= 1.0 + 1e-3 && on <= 1e-3 &&
                    obj_gap <= 1e-6 && secs < 30.0;
  return {pass, "soft threshold " + fmt("%.1e", soft_err) + " (<= 1e-8), traces monotone " +
                    (all_monotone ? "yes" : "no") + ", off-support |g|/tau " + fmt("%.6f", off) +
                    " (<= 1.001), on-support residual/tau " + fmt("%.1e", on) + " (<= 1e-3), objective gap to FISTA " +
                    fmt("%.1e", obj_gap) + " (<= 1e-6), " + fmt("%.1f", secs) + " s (< 30 s)"};
}

Outcome end_to_end() {
  const auto t0 = Clock::now();
  const auto scene = e2e_scene();
  bool pass = true;
  std::string detail;
  for (std::size_t k : {2u, 4u}) {
    double psnr[4];
    for (std::size_t f = 0; f < 4; ++f) {
      const auto res = run_pipeline(e2e_spec(kFamilies[f], k), scene);
      psnr[f] = res.mean_psnr;
      std::printf("  K=%zu %-8s best tau %-7g mean PSNR %.3f dB  curve:", k,
                  std::string(family_name(kFamilies[f])).c_str(), res.best_tau, res.mean_psnr);
      for (double v : res.tau_curve) std::printf(" %.3f", v);
      std::printf("\n");
      std::fflush(stdout);
    }
    const double rsq = psnr[0], bsq = psnr[1], rhex = psnr[2], bhex = psnr[3];
    const bool ordered = rsq < rhex && rsq < bsq && rhex < bhex && bsq < bhex;
    const bool gap = bhex - rsq >= 0.5;
    pass = pass && ordered && gap;
    detail += "K=" + std::to_string(k) + ": rand-sq " + fmt("%.2f", rsq) + ", bn-sq " + fmt("%.2f", bsq) +
              ", rand-hex " + fmt("%.2f", rhex) + ", bn-hex " + fmt("%.2f", bhex) + " ordered " +
              (ordered ? "yes" : "no") + ", gap " + fmt("%.2f", bhex - rsq) + " dB (>= 0.5); ";
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 1200.0;
  return {pass, detail + fmt("%.0f", secs) + " s (< 1200 s)"};
}

Outcome offset_sweep() {
  const auto t0 = Clock::now();
  const auto scene = e2e_scene();
  const auto spec = e2e_spec(ApertureFamily::BlueNoiseHex, 2);
  std::vector<double> offsets;
  for (int s = 0; s <= 8; ++s) offsets.push_back(0.1 * s);
  const auto sweep = sweep_offset(spec, scene, offsets);
  std::size_t best = 0;
  for (std::size_t s = 0; s < sweep.size(); ++s) {
    std::printf("  a=%.1f mean PSNR %.3f dB (tau %g)\n", sweep[s].offset_a, sweep[s].mean_psnr, sweep[s].best_tau);
    if (sweep[s].mean_psnr > sweep[best].mean_psnr) best = s;
  }
  const auto direct = run_pipeline(spec, scene);
  const bool same = sweep.size() == offsets.size() && sweep[0].mean_psnr == direct.mean_psnr &&
                    sweep[0].best_tau == direct.best_tau;
  const double a_best = sweep[best].offset_a;
  const double secs = seconds_since(t0);
  const bool pass = same && secs < 1800.0;
  return {pass, "a=0 matches pipeline bit-for-bit " + std::string(same ? "yes" : "no") + "; argmax a = " +
                    fmt("%.1f", a_best) + " (inside (0, 0.6): " + (a_best > 0.0 && a_best < 0.6 ? "yes" : "no") +
                    ", reported only); " + fmt("%.0f", secs) + " s (< 1800 s)"};
}

Outcome delta_probe() {
  std::mt19937_64 eng(9);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd g(30, 10);
  for (Eigen::Index q = 0; q < g.size(); ++q) g.data()[q] = nd(eng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() * Eigen::MatrixXd::Identity(30, 10);
  double ortho = 0.0;
  for (std::size_t s = 1; s <= 3; ++s) ortho = std::max(ortho, brute_force_delta_s(q, s).delta_s);
  Eigen::MatrixXd dup = q;
  dup.col(7) = dup.col(1);
  const double dup_err = std::abs(brute_force_delta_s(dup, 2).delta_s - 1.0);

  const auto t0 = Clock::now();
  int hb_wins = 0;
  bool exhaustive = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto probe = [&](ApertureFamily family) {
      const auto set = gen_aperture_set(family, 6, 6, 2, 0.5, true, seed);
      const auto h = materialize_H(ForwardOperator({6, 6, 3}, code_planes(set, 0.0)));
      return brute_force_delta_s(h, 2);
    };
    const auto sr = probe(ApertureFamily::RandomSquare);
    const auto hb = probe(ApertureFamily::BlueNoiseHex);
    exhaustive = exhaustive && sr.exhaustive && hb.exhaustive;
    hb_wins += hb.delta_s <= sr.delta_s;
    std::printf("  seed %llu: delta_2 SR %.4f (alpha %.4f), HB %.4f (alpha %.4f)\n",
                static_cast<unsigned long long>(seed), sr.delta_s, sr.alpha, hb.delta_s, hb.alpha);
  }
  const double secs = seconds_since(t0);
  const bool pass = ortho <= 1e-10 && dup_err <= 1e-10 && exhaustive && secs < 120.0;
  return {pass, "orthonormal " + fmt("%.1e", ortho) + ", duplicate column " + fmt("%.1e", dup_err) +
                    " (<= 1e-10); tiny CASSI S=2 exhaustive in " + fmt("%.2f", secs) +
                    " s (< 120 s); delta(HB) <= delta(SR) in " + std::to_string(hb_wins) + "/5 seeds (reported only)"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion,-c", selected, "criterion number (repeatable; default all)")
      ->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "operator correctness", operator_correctness},
      {2, "adjoint and basis identities", adjoint_and_basis},
      {3, "hex equivalence geometry", hex_geometry},
      {4, "expectation ordering", expectation_ordering},
      {5, "complementarity", complementarity},
      {6, "GPSR correctness", gpsr_correctness},
      {7, "end-to-end ordering", end_to_end},
      {8, "offset sweep", offset_sweep},
      {9, "delta_s probe", delta_probe},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("criterion %d %s: %s | %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
