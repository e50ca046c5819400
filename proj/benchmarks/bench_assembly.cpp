#include <benchmark/benchmark.h>

#include "lsims/assembly.hpp"

using namespace lsims;

static void bm_assemble_fine(benchmark::State& state) {
  const auto grid = build_grid(static_cast<int>(state.range(0)), 10);
  const auto field =
      generate_field(grid, FieldKind::inclusions, 1e4, 7);
  for (auto _ : state) {
    auto ops = assemble(grid, field);
    benchmark::DoNotOptimize(ops.A.values.data());
  }
}
BENCHMARK(bm_assemble_fine)->Arg(5)->Arg(10)->Arg(20);

static void bm_restrict_local(benchmark::State& state) {
  const auto grid = build_grid(10, 10);
  const auto field = generate_field(grid, FieldKind::inclusions, 1e4, 7);
  const auto ops = assemble(grid, field);
  const auto sd = oversample(grid, grid.coarse_index(5, 5),
                             static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto local = restrict_local(ops, sd);
    benchmark::DoNotOptimize(local.first.values.data());
  }
}
BENCHMARK(bm_restrict_local)->Arg(1)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
