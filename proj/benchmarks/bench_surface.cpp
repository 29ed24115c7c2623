#include <benchmark/benchmark.h>

#include <sstream>

#include "unitsurf/surface.hpp"

namespace {

using namespace unitsurf;

void BM_Revolve(benchmark::State& state) {
  const ProfileCurve p = sphere_profile(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(revolve(p, 128));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 128);
}
BENCHMARK(BM_Revolve)->Arg(256)->Arg(2048);

void BM_ExportObj(benchmark::State& state) {
  const Mesh mesh = revolve(sphere_profile(512), 128);
  for (auto _ : state) {
    std::ostringstream out;
    export_obj(mesh, out);
    benchmark::DoNotOptimize(out.str().size());
  }
}
BENCHMARK(BM_ExportObj)->Unit(benchmark::kMillisecond);

void BM_VerifyProfile(benchmark::State& state) {
  const ProfileCurve p = sphere_profile(1000);
  for (auto _ : state) benchmark::DoNotOptimize(verify_profile(p, 1e-3));
}
BENCHMARK(BM_VerifyProfile)->Unit(benchmark::kMillisecond);

}  // namespace
