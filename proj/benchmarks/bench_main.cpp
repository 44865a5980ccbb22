#include <benchmark/benchmark.h>

#include <random>

#include "hexcassi/aperture.hpp"
#include "hexcassi/bluenoise.hpp"
#include "hexcassi/forward_model.hpp"
#include "hexcassi/gpsr.hpp"
#include "hexcassi/hex_grey.hpp"
#include "hexcassi/rip.hpp"
#include "hexcassi/scenes.hpp"
#include "hexcassi/sparsity_basis.hpp"

using namespace hexcassi;

namespace {

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 eng(1);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (double& x : v) x = nd(eng);
  return v;
}

ForwardOperator make_h(std::size_t n, std::size_t l, std::size_t k) {
  const auto set = gen_aperture_set(ApertureFamily::RandomHex, n, n, k, 1.0 / static_cast<double>(k), true, 1);
  return ForwardOperator({n, n, l}, code_planes(set, 0.0));
}

void BM_ApplyH(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = make_h(n, 6, 2);
  const auto f = noise(h.cols());
  std::vector<double> y(h.rows());
  for (auto _ : state) {
    h.apply(f, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.cols()));
}
BENCHMARK(BM_ApplyH)->Arg(64)->Arg(256);

void BM_ApplyHt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = make_h(n, 6, 2);
  const auto y = noise(h.rows());
  std::vector<double> f(h.cols());
  for (auto _ : state) {
    h.apply_adjoint(y, f);
    benchmark::DoNotOptimize(f.data());
  }
}
BENCHMARK(BM_ApplyHt)->Arg(64)->Arg(256);

void BM_Synthesize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SparsityBasis psi(make_basis_config({n, n, 6}));
  const auto theta = noise(psi.cols());
  std::vector<double> f(psi.rows());
  for (auto _ : state) {
    psi.apply(theta, f);
    benchmark::DoNotOptimize(f.data());
  }
}
BENCHMARK(BM_Synthesize)->Arg(64)->Arg(256);

void BM_VoidAndCluster(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen_bluenoise_hex(n, n, 0.5, ++seed));
}
BENCHMARK(BM_VoidAndCluster)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_HexToGrey(benchmark::State& state) {
  const auto hex = gen_random_hex(256, 256, 0.5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hex_to_grey(hex, 0.3));
}
BENCHMARK(BM_HexToGrey);

// Fixed iteration count so the timing is per GPSR iteration times 20.
void BM_GpsrTwentyIterations(benchmark::State& state) {
  const CubeDims d{64, 64, 6};
  const auto scene = synth_scene(SceneKind::TextEdges, d, 1);
  const auto h = make_h(64, 6, 2);
  const SparsityBasis psi(make_basis_config(d));
  const auto y = h(scene.data());
  SolverConfig cfg;
  cfg.tau = 1e-3;
  cfg.max_iters = 20;
  cfg.tol = 1e-300;
  for (auto _ : state) benchmark::DoNotOptimize(solve(y, h, psi, cfg));
}
BENCHMARK(BM_GpsrTwentyIterations)->Unit(benchmark::kMillisecond);

void BM_RStatistic(benchmark::State& state) {
  const auto set = gen_complementary_set(ApertureFamily::BlueNoiseHex, 64, 64, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(r_statistic(set, 0.0, {5}, 100'000, 1));
}
BENCHMARK(BM_RStatistic)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
