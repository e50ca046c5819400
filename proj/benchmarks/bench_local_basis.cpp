#include <benchmark/benchmark.h>

#include "lsims/local_basis.hpp"

using namespace lsims;

namespace {

struct LocalSetup {
  CoarseFineGrid grid;
  Subdomain sd;
  SparseSymMatrix a, m;
  LocalSetup(int layers) {
    grid = build_grid(10, 10);
    const auto field = generate_field(grid, FieldKind::inclusions, 1e4, 7);
    const auto ops = assemble(grid, field);
    sd = oversample(grid, grid.coarse_index(5, 5), layers);
    std::tie(a, m) = restrict_local(ops, sd);
  }
};

}  // namespace

static void bm_lssi_iterate(benchmark::State& state) {
  const LocalSetup setup(2);
  const auto phi0 = initial_functions(setup.grid, setup.sd, BasisMethod::lssi);
  for (auto _ : state) {
    auto basis =
        lssi_iterate(setup.a, setup.m, phi0, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(basis.thetas.data());
  }
}
BENCHMARK(bm_lssi_iterate)->Arg(1)->Arg(4);

static void bm_lksi_iterate(benchmark::State& state) {
  const LocalSetup setup(2);
  const auto psi0 = initial_functions(setup.grid, setup.sd, BasisMethod::lksi);
  for (auto _ : state) {
    auto basis = lksi_iterate(setup.a, setup.m, psi0.front(),
                              static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(basis.thetas.data());
  }
}
BENCHMARK(bm_lksi_iterate)->Arg(2)->Arg(4)->Arg(8);

static void bm_local_eig_oracle(benchmark::State& state) {
  const LocalSetup setup(1);
  for (auto _ : state) {
    auto eig = local_eig_oracle(setup.a, setup.m, 8);
    benchmark::DoNotOptimize(eig.thetas.data());
  }
}
BENCHMARK(bm_local_eig_oracle);

BENCHMARK_MAIN();
