#include <benchmark/benchmark.h>

#include "unitsurf/profile.hpp"
#include "unitsurf/shooting.hpp"

namespace {

using namespace unitsurf;

void BM_BackwardRun(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0)) / 100.0;
  const IntegratorConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(classify_lambda(lambda, cfg));
}
BENCHMARK(BM_BackwardRun)->Arg(120)->Arg(300)->Arg(421)->Arg(1000);

void BM_FindLambda0(benchmark::State& state) {
  const IntegratorConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(find_lambda0(cfg, 1e-10));
}
BENCHMARK(BM_FindLambda0)->Unit(benchmark::kMillisecond);

void BM_LaunchSeparatrix(benchmark::State& state) {
  const IntegratorConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(launch_separatrix(cfg));
}
BENCHMARK(BM_LaunchSeparatrix);

void BM_DenseEval(benchmark::State& state) {
  const Trajectory traj = separatrix_trajectory(IntegratorConfig{});
  const double a = traj.t_min();
  const double w = traj.t_max() - a;
  double t = 0.0;
  for (auto _ : state) {
    t += 0.618033988749895;
    t -= static_cast<double>(static_cast<long>(t));
    benchmark::DoNotOptimize(traj.dense_eval(a + w * t));
  }
}
BENCHMARK(BM_DenseEval);

}  // namespace
