// Microbenchmarks for the per-record hot paths. Sizes are chosen so each
// iteration runs in the hundreds of microseconds: large enough to swamp
// fixed setup, small enough that --benchmark_min_time stays snappy.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "nmcdse/dag.hpp"
#include "nmcdse/entropy.hpp"
#include "nmcdse/lru.hpp"
#include "nmcdse/signature.hpp"
#include "nmcdse/spatial.hpp"
#include "nmcdse/synthetic.hpp"

namespace {

using namespace nmcdse;

std::vector<std::uint64_t> random_addresses(std::size_t n,
                                            std::uint64_t footprint_lines) {
  std::mt19937_64 rng(99);
  std::vector<std::uint64_t> addrs(n);
  for (auto& a : addrs) a = (rng() % footprint_lines) * 64;
  return addrs;
}

Trace mixed_trace(std::uint64_t n_accesses) {
  PatternSpec spec;
  spec.kind = PatternKind::Random;
  spec.n_accesses = n_accesses;
  spec.range_bytes = 16 * 1024 * 1024;
  spec.compute_mix = 0.5;
  spec.dep_shape = DepShape::Fanout;
  spec.fanout = 4;
  spec.rng_seed = 3;
  return generate_synthetic(spec);
}

void BM_LruStackAccess(benchmark::State& state) {
  auto addrs = random_addresses(static_cast<std::size_t>(state.range(0)),
                                1 << 14);
  for (auto _ : state) {
    LruStack stack(512, addrs.size());
    std::uint64_t misses = 0;
    for (auto a : addrs) misses += stack.access(a / 64).miss;
    benchmark::DoNotOptimize(misses);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LruStackAccess)->Arg(1 << 14)->Arg(1 << 17);

void BM_BoundedLruMissCount(benchmark::State& state) {
  auto addrs = random_addresses(static_cast<std::size_t>(state.range(0)),
                                1 << 14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lru_miss_count(addrs, 64, 32 * 1024));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BoundedLruMissCount)->Arg(1 << 14)->Arg(1 << 17);

void BM_EntropyCurve(benchmark::State& state) {
  auto addrs = random_addresses(static_cast<std::size_t>(state.range(0)),
                                1 << 16);
  const std::vector<std::uint32_t> reductions{0, 3, 6, 9, 12};
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy_curve_addresses(addrs, reductions));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EntropyCurve)->Arg(1 << 14)->Arg(1 << 17);

void BM_SpatialLocality(benchmark::State& state) {
  Trace t = mixed_trace(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spatial_locality(t, SpatialConfig{}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpatialLocality)->Arg(1 << 14)->Arg(1 << 16);

void BM_DependenceDag(benchmark::State& state) {
  Trace t = mixed_trace(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dependence_dag(t));
  }
  state.SetItemsProcessed(state.iterations() * t.records.size());
}
BENCHMARK(BM_DependenceDag)->Arg(1 << 14)->Arg(1 << 16);

void BM_FullSignature(benchmark::State& state) {
  Trace t = mixed_trace(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(signature(t));
  }
  state.SetItemsProcessed(state.iterations() * t.records.size());
}
BENCHMARK(BM_FullSignature)->Arg(1 << 14)->Arg(1 << 16);

void BM_GenerateStencil(benchmark::State& state) {
  PatternSpec spec;
  spec.kind = PatternKind::Stencil1d;
  spec.array_bytes = static_cast<std::uint64_t>(state.range(0));
  spec.element_size = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_synthetic(spec));
  }
}
BENCHMARK(BM_GenerateStencil)->Arg(1 << 18)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
