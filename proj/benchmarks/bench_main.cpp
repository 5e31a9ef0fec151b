#include <benchmark/benchmark.h>

#include "classif/estimator.hpp"
#include "classif/neighbors.hpp"
#include "classif/synth.hpp"

namespace {

classif::LabeledDataset blobs(std::size_t n) {
  classif::synth::SynthSpec spec;
  spec.kind = classif::synth::Kind::Blobs;
  spec.n = n;
  spec.noise = 0.3;
  spec.seed = 7;
  spec.centers = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
  return classif::synth::generate(spec);
}

void BM_KNearestQueries(benchmark::State& state) {
  const auto data = blobs(static_cast<std::size_t>(state.range(0)));
  const bool brute = state.range(1) != 0;
  const classif::NeighborIndex index(data, classif::MetricKind::L2, brute);
  std::size_t row = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.nearest_of(row, 16));
    row = (row + 1) % data.size();
  }
  state.SetLabel(brute ? "brute-force" : "kd-tree");
}
BENCHMARK(BM_KNearestQueries)->ArgsProduct({{1000, 10000, 50000}, {0, 1}});

void BM_RadiusQueries(benchmark::State& state) {
  const auto data = blobs(static_cast<std::size_t>(state.range(0)));
  const bool brute = state.range(1) != 0;
  const classif::NeighborIndex index(data, classif::MetricKind::L2, brute);
  std::size_t row = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.radius_of(row, 0.05));
    row = (row + 1) % data.size();
  }
  state.SetLabel(brute ? "brute-force" : "kd-tree");
}
BENCHMARK(BM_RadiusQueries)->ArgsProduct({{1000, 10000, 50000}, {0, 1}});

void BM_Estimate(benchmark::State& state) {
  const auto data = blobs(static_cast<std::size_t>(state.range(0)));
  const auto spec = classif::NeighborhoodSpec::nearest(16, classif::MetricKind::L2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classif::classifiability(data, spec).limit);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Estimate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_IndexBuild(benchmark::State& state) {
  const auto data = blobs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    classif::NeighborIndex index(data, classif::MetricKind::L2);
    benchmark::DoNotOptimize(index.size());
  }
}
BENCHMARK(BM_IndexBuild)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
