#include <benchmark/benchmark.h>

#include "eigdiag/eigensolve.hpp"
#include "eigdiag/shapegen.hpp"

using namespace eigdiag;

namespace {

TriMesh square_mesh(int level) {
  return refine(triangulate_convex(ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), level);
}

void BM_valtr(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(valtr_random(n, seed++));
}
BENCHMARK(BM_valtr)->Arg(10)->Arg(20)->Arg(100);

void BM_assemble(benchmark::State& state) {
  const TriMesh m = square_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(m));
  state.counters["nodes"] = static_cast<double>(m.node_count());
}
BENCHMARK(BM_assemble)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_dirichlet(benchmark::State& state) {
  const TriMesh m = square_mesh(static_cast<int>(state.range(0)));
  const Assembly a = assemble(m);
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_lambda1(m, a));
  state.counters["nodes"] = static_cast<double>(m.node_count());
}
BENCHMARK(BM_dirichlet)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_neumann(benchmark::State& state) {
  const TriMesh m = square_mesh(static_cast<int>(state.range(0)));
  const Assembly a = assemble(m);
  for (auto _ : state) benchmark::DoNotOptimize(neumann_mu1(m, a));
  state.counters["nodes"] = static_cast<double>(m.node_count());
}
BENCHMARK(BM_neumann)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

// One diagram sample end to end at the default refinement.
void BM_solve_shape(benchmark::State& state) {
  std::uint64_t seed = 100;
  for (auto _ : state) benchmark::DoNotOptimize(solve_shape(valtr_random(12, seed++)));
}
BENCHMARK(BM_solve_shape)->Unit(benchmark::kMillisecond)->Iterations(5);

}  // namespace
