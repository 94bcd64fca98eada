// Serial reference kernels against their OpenMP counterparts, plus one
// end-to-end LMO call on a large simplex.

#include <benchmark/benchmark.h>

#include <random>

#include "fwkit/kernels.hpp"
#include "fwkit/region.hpp"

using namespace fwkit;

namespace {

Vector random_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Matrix random_matrix(Index m, Index n, std::uint64_t seed) {
  Vector flat = random_vector(m * n, seed);
  return Eigen::Map<Matrix>(flat.data(), m, n);
}

template <Index (*Kernel)(std::span<const double>)>
void BM_reduce(benchmark::State& state) {
  const Vector v = random_vector(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(kernels::view(v)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <void (*Kernel)(const Matrix&, std::span<const double>, std::span<double>), bool Trans>
void BM_gemv(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix a = random_matrix(n, n, 2);
  const Vector x = random_vector(n, 3);
  Vector y(n);
  for (auto _ : state) {
    Kernel(a, kernels::view(x), kernels::view(y));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_simplex_lmo(benchmark::State& state) {
  const Region region = Region::simplex(state.range(0));
  const Vector g = random_vector(state.range(0), 4);
  for (auto _ : state) benchmark::DoNotOptimize(lmo(region, g));
}

}  // namespace

BENCHMARK(BM_reduce<kernels::serial::argmin>)->Name("argmin/serial")->RangeMultiplier(8)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_reduce<kernels::omp::argmin>)->Name("argmin/omp")->RangeMultiplier(8)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_reduce<kernels::serial::argmax_abs>)->Name("argmax_abs/serial")->Range(1 << 15, 1 << 24);
BENCHMARK(BM_reduce<kernels::omp::argmax_abs>)->Name("argmax_abs/omp")->Range(1 << 15, 1 << 24);
BENCHMARK(BM_gemv<kernels::serial::gemv, false>)->Name("gemv/serial")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_gemv<kernels::omp::gemv, false>)->Name("gemv/omp")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_gemv<kernels::serial::gemv_t, true>)->Name("gemv_t/serial")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_gemv<kernels::omp::gemv_t, true>)->Name("gemv_t/omp")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_simplex_lmo)->Name("lmo/simplex")->Range(1 << 10, 1 << 22);

BENCHMARK_MAIN();
