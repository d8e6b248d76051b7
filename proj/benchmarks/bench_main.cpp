#include <benchmark/benchmark.h>

#include "kfsd/depths.hpp"
#include "kfsd/detect.hpp"
#include "kfsd/resample.hpp"
#include "kfsd/simgen.hpp"

namespace {

using namespace kfsd;

FunctionalSample mm2_sample(std::size_t n) {
  RngStream rng(42);
  return MixtureGenerator(MixtureModelSpec{MixtureModel::MM2, 0.05, n}).draw_dataset(rng).sample;
}

void BM_DepthAll(benchmark::State& state, DepthId id) {
  const auto s = mm2_sample(static_cast<std::size_t>(state.range(0)));
  const auto params = resolve_depth_params(DepthSpec{id}, s);
  for (auto _ : state) benchmark::DoNotOptimize(depth_all(s, params));
  state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_DepthAll, KFSD, DepthId::KFSD)->RangeMultiplier(2)->Range(25, 400)->Complexity();
BENCHMARK_CAPTURE(BM_DepthAll, FSD, DepthId::FSD)->Arg(50)->Arg(200);
BENCHMARK_CAPTURE(BM_DepthAll, MBD, DepthId::MBD)->Arg(50)->Arg(200);
BENCHMARK_CAPTURE(BM_DepthAll, RTD, DepthId::RTD)->Arg(50)->Arg(200);

void BM_KfsdDetect(benchmark::State& state, KfsdScheme scheme) {
  const auto s = mm2_sample(static_cast<std::size_t>(state.range(0)));
  DetectorConfig cfg;
  cfg.scheme = scheme;
  for (auto _ : state) {
    RngStream rng(7);
    benchmark::DoNotOptimize(kfsd_detect(s, cfg, rng));
  }
}
BENCHMARK_CAPTURE(BM_KfsdDetect, tri, KfsdScheme::Tri)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KfsdDetect, wei, KfsdScheme::Wei)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KfsdDetect, smo, KfsdScheme::Smo)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_GaussianPerturbation(benchmark::State& state) {
  const auto s = mm2_sample(50);
  const GaussianPerturbation pert(sample_covariance(s), 0.05);
  RngStream rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(pert.draw(rng));
}
BENCHMARK(BM_GaussianPerturbation);

void BM_GaussianPerturbationSetup(benchmark::State& state) {
  const auto s = mm2_sample(50);
  const Eigen::MatrixXd cov = sample_covariance(s);
  for (auto _ : state) benchmark::DoNotOptimize(GaussianPerturbation(cov, 0.05));
}
BENCHMARK(BM_GaussianPerturbationSetup);

void BM_Bootstrap(benchmark::State& state) {
  const auto s = mm2_sample(50);
  BootstrapConfig cfg;
  cfg.B = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    RngStream rng(5);
    benchmark::DoNotOptimize(bootstrap_detect(s, DepthSpec{DepthId::HMD}, cfg, rng));
  }
}
BENCHMARK(BM_Bootstrap)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
