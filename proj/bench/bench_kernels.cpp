#include <benchmark/benchmark.h>

#include "wordperc/estimate.hpp"
#include "wordperc/goodbox.hpp"
#include "wordperc/sampling.hpp"

namespace {

using namespace wordperc;

const RngStream kStream{kDefaultMasterSeed, 42};

void BM_SampleField(benchmark::State& state) {
  const LatticeSpec spec(2, 1);
  const Window w = Window::cube(2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_field(spec, w, 0.5, kStream).size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.volume()));
}

void BM_SampleFieldSerial(benchmark::State& state) {
  const LatticeSpec spec(2, 1);
  const Window w = Window::cube(2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_field_serial(spec, w, 0.5, kStream).size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.volume()));
}

void BM_Enumerate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_good_configurations(2, state.range(0)));
}

void BM_EnumerateSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_good_configurations_serial(2, state.range(0)));
  }
}

SiteField renorm_field(Coord n, Coord radius) {
  return sample_field(LatticeSpec(2, 1), Window::boxes(2, n, radius), 0.5, kStream);
}

void BM_Renormalize(benchmark::State& state) {
  const SiteField f = renorm_field(8, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(renormalize(f, 8).count_good());
}

void BM_RenormalizeSerial(benchmark::State& state) {
  const SiteField f = renorm_field(8, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(renormalize_serial(f, 8).count_good());
}

bool goodbox_trial(const RngStream& s) {
  const Box box{Vertex::origin(2), 16};
  const Window w{box.corner(), box.corner() + Vertex{15, 15}};
  return is_good(sample_field_serial(LatticeSpec(2, 1), w, 0.5, s), box);
}

void BM_Estimate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate(goodbox_trial, static_cast<std::uint64_t>(state.range(0)), 1, 2));
  }
}

void BM_EstimateSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_serial(goodbox_trial, static_cast<std::uint64_t>(state.range(0)), 1, 2));
  }
}

}  // namespace

BENCHMARK(BM_SampleField)->Arg(256)->Arg(1024);
BENCHMARK(BM_SampleFieldSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_Enumerate)->Arg(4);
BENCHMARK(BM_EnumerateSerial)->Arg(4);
BENCHMARK(BM_Renormalize)->Arg(32)->Arg(64);
BENCHMARK(BM_RenormalizeSerial)->Arg(32)->Arg(64);
BENCHMARK(BM_Estimate)->Arg(10000);
BENCHMARK(BM_EstimateSerial)->Arg(10000);

BENCHMARK_MAIN();
