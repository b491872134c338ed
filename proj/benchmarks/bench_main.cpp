#include <benchmark/benchmark.h>

#include "simdeg/experiments.hpp"
#include "simdeg/factorization.hpp"
#include "simdeg/groups.hpp"
#include "simdeg/matrix.hpp"
#include "simdeg/opspace.hpp"
#include "simdeg/similarity.hpp"

using namespace simdeg;

static void BM_OpNorm(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMatrix m = random_gaussian(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(m));
}
BENCHMARK(BM_OpNorm)->Arg(8)->Arg(32)->Arg(128);

// SDP sizes grow as n^2 here, so this tracks the solver more than the map.
static void BM_CbNormTranspose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CbMap t = CbMap::from_function(n, n, [](const CMatrix& x) { return CMatrix(x.transpose()); });
  for (auto _ : state) benchmark::DoNotOptimize(cb_norm(t));
}
BENCHMARK(BM_CbNormTranspose)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_Gamma2RowCol(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMatrix m = random_gaussian(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gamma2_rowcol_norm(m));
}
BENCHMARK(BM_Gamma2RowCol)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_DixmierUnitarize(benchmark::State& state) {
  Rng rng(3);
  const GroupPtr g = make_group("dihedral:" + std::to_string(state.range(0)));
  const GroupRep rho = random_unitary_rep(g, 4, rng);
  const GroupRep pi = ub_rep_twist(rho, random_with_condition(static_cast<std::size_t>(rho.dim()), 5.0, rng));
  for (auto _ : state) benchmark::DoNotOptimize(dixmier_unitarize(pi).cond);
}
BENCHMARK(BM_DixmierUnitarize)->Arg(3)->Arg(6)->Arg(12);

static void BM_HomCbNorm(benchmark::State& state) {
  Rng rng(4);
  const GroupPtr g = make_group("cyclic:" + std::to_string(state.range(0)));
  const GroupRep rho = random_unitary_rep(g, 2, rng);
  const GroupRep pi = ub_rep_twist(rho, random_with_condition(static_cast<std::size_t>(rho.dim()), 3.0, rng));
  for (auto _ : state) benchmark::DoNotOptimize(hom_cb_norm(pi).value);
}
BENCHMARK(BM_HomCbNorm)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_BpGauge(benchmark::State& state) {
  Rng rng(5);
  const CMatrix x = random_gaussian(2, 2, rng);
  const auto letters = weyl_design(2);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bp_gauge(x, 1, letters, d).value);
}
BENCHMARK(BM_BpGauge)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_Scenario(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.scenario = "dixmier-sweep";
  cfg.group = "dihedral:4";
  cfg.grid = {1, 4, 16};
  cfg.samples = 8;
  cfg.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg).size());
}
BENCHMARK(BM_Scenario)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
