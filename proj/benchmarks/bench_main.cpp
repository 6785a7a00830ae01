#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "bor/besov_orlicz.hpp"
#include "bor/orlicz.hpp"
#include "bor/path_gen.hpp"
#include "bor/rde.hpp"
#include "bor/rough_lift.hpp"
#include "bor/sewing.hpp"

namespace {

bor::SampledPath brownian(std::size_t steps, std::size_t dim = 1) {
  bor::DriverSpec spec;
  spec.n_steps = steps;
  spec.dimension = dim;
  spec.seed = 1;
  return bor::simulate_bm(spec);
}

void BM_Luxemburg(benchmark::State& state) {
  const auto w = brownian(static_cast<std::size_t>(state.range(0)));
  std::vector<double> v(w.data().begin(), w.data().end() - 1);
  for (auto& x : v) x = std::abs(x);
  const auto f = bor::SampledFunction::on_interval(1.0, v);
  const bor::YoungFunction phi(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(bor::luxemburg_norm(f, phi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Luxemburg)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity();

void BM_SeminormDyadic(benchmark::State& state) {
  const auto w = brownian(static_cast<std::size_t>(state.range(0)));
  const bor::RegularityParams p{0.5, 2.0, bor::kInfinity};
  for (auto _ : state) benchmark::DoNotOptimize(bor::seminorm_dyadic(w, p).seminorm_dyadic);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeminormDyadic)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity();

void BM_LeftPointLift(benchmark::State& state) {
  const auto w = brownian(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    auto x = bor::lift_md_leftpoint(w);
    benchmark::DoNotOptimize(x.chen().max_defect);
  }
}
BENCHMARK(BM_LeftPointLift)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_RoughIntegral(benchmark::State& state) {
  const auto w = brownian(static_cast<std::size_t>(state.range(0)));
  const auto x = bor::lift_scalar(w, bor::ScalarLift::stratonovich);
  const auto z = bor::compose(bor::fields::sin(1),
                              bor::make_controlled(w, bor::SampledPath(1.0, 1, std::vector<double>(w.points(), 1.0)), x), x);
  for (auto _ : state) benchmark::DoNotOptimize(bor::rough_integral(x, z).integral.at(w.steps(), 0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RoughIntegral)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity()->Unit(benchmark::kMicrosecond);

void BM_PicardSin(benchmark::State& state) {
  const auto w = brownian(static_cast<std::size_t>(state.range(0)));
  const bor::RdeProblem pb{bor::lift_scalar(w, bor::ScalarLift::stratonovich), bor::fields::sin(1),
                           {std::numbers::pi / 2.0}, {}, {}};
  bor::PicardOptions opt;
  opt.report_metric = false;
  for (auto _ : state) benchmark::DoNotOptimize(bor::solve_picard(pb, opt).residual);
}
BENCHMARK(BM_PicardSin)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_OneStepSin(benchmark::State& state) {
  const auto w = brownian(static_cast<std::size_t>(state.range(0)));
  const bor::RdeProblem pb{bor::lift_scalar(w, bor::ScalarLift::stratonovich), bor::fields::sin(1),
                           {std::numbers::pi / 2.0}, {}, {}};
  for (auto _ : state) benchmark::DoNotOptimize(bor::solve_onestep(pb).y.at(w.steps(), 0));
}
BENCHMARK(BM_OneStepSin)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_FbmCirculant(benchmark::State& state) {
  const bor::FbmGenerator gen(0.4, static_cast<std::size_t>(state.range(0)), 1.0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen.sample(seed++).at(1, 0));
}
BENCHMARK(BM_FbmCirculant)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
