#include <benchmark/benchmark.h>

#include "wllab/prng.hpp"
#include "wllab/wllab.hpp"

using namespace wllab;

namespace {

const FieldSpec Q = FieldSpec::rationals();

void BM_atomic_types_petersen_k3(benchmark::State& state) {
  Graph g = petersen_graph();
  for (auto _ : state) benchmark::DoNotOptimize(atomic_types(g, 3));
}
BENCHMARK(BM_atomic_types_petersen_k3);

void BM_wl2_fixed_point_cycle(benchmark::State& state) {
  Graph g = cycle_graph(static_cast<std::uint32_t>(state.range(0)));
  Partition atoms = atomic_types(g, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(fixed_point({OpFamily::WL, 2, 1, std::nullopt}, atoms));
}
BENCHMARK(BM_wl2_fixed_point_cycle)->Arg(8)->Arg(16)->Arg(32);

void BM_c_step_arity5_r2(benchmark::State& state) {
  Partition atoms = atomic_types(cycle_graph(5), 5);
  for (auto _ : state) benchmark::DoNotOptimize(c_step(atoms, 2));
}
BENCHMARK(BM_c_step_arity5_r2);

void BM_im3_rationals_path4(benchmark::State& state) {
  Partition atoms = atomic_types(path_graph(4), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(fixed_point({OpFamily::IM, 3, 1, Q}, atoms));
}
BENCHMARK(BM_im3_rationals_path4);

void BM_intersection_numbers_rook(benchmark::State& state) {
  SpasId wl{SpasFamily::WL, 1, std::nullopt};
  Graph stable = Graph::from_partition(spas_apply(wl, rook_graph_4x4(), 2));
  for (auto _ : state) benchmark::DoNotOptimize(intersection_numbers(stable));
}
BENCHMARK(BM_intersection_numbers_rook);

void BM_simultaneous_similarity_5x5(benchmark::State& state) {
  detail::SplitMix64 rng(5);
  std::vector<FieldMatrix> xs, ys;
  FieldMatrix s(Q, 5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      s.set(i, j, static_cast<std::int64_t>(rng.below(7)) - 3 + (i == j ? 4 : 0));
  FieldMatrix sinv = *s.inverse();
  for (int m = 0; m < 3; ++m) {
    FieldMatrix x(Q, 5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        x.set(i, j, static_cast<std::int64_t>(rng.below(5)) - 2);
    xs.push_back(x);
    ys.push_back(s * x * sinv);
  }
  for (auto _ : state) benchmark::DoNotOptimize(simultaneously_similar(xs, ys));
}
BENCHMARK(BM_simultaneous_similarity_5x5);

void BM_orbit_partition_c6_k3(benchmark::State& state) {
  Graph g = cycle_graph(6);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_partition(g, 3));
}
BENCHMARK(BM_orbit_partition_c6_k3);

}  // namespace

BENCHMARK_MAIN();
