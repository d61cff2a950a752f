// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "vortexlab/kernels.hpp"
#include "vortexlab/parallel.hpp"

namespace kn = vortexlab::kernels;

namespace {

struct Fields {
  int n;
  double h;
  std::vector<double> u, logmod, diag, out;
  explicit Fields(int n) : n(n), h(8.0 / (n - 1)), u(n * n), logmod(n * n), diag(n * n, 1.5), out(n * n) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (auto& v : u) v = d(rng);
    for (auto& v : logmod) v = 2.0 * d(rng);
  }
};

void set_threads(const benchmark::State& state) {
  vortexlab::parallel::set_thread_count(static_cast<int>(state.range(1)));
}

void BM_laplacian_serial(benchmark::State& state) {
  Fields f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kn::serial::laplacian(f.n, f.h, f.u, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
}

void BM_laplacian_omp(benchmark::State& state) {
  Fields f(static_cast<int>(state.range(0)));
  set_threads(state);
  for (auto _ : state) {
    kn::laplacian(f.n, f.h, f.u, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
}

void BM_residual_serial(benchmark::State& state) {
  Fields f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kn::serial::vortex_residual(f.n, f.h, 3, f.logmod, f.u, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
}

void BM_residual_omp(benchmark::State& state) {
  Fields f(static_cast<int>(state.range(0)));
  set_threads(state);
  for (auto _ : state) {
    kn::vortex_residual(f.n, f.h, 3, f.logmod, f.u, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
}

void BM_operator_serial(benchmark::State& state) {
  Fields f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kn::serial::shifted_operator(f.n, f.h, f.diag, f.u, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
}

void BM_operator_omp(benchmark::State& state) {
  Fields f(static_cast<int>(state.range(0)));
  set_threads(state);
  for (auto _ : state) {
    kn::shifted_operator(f.n, f.h, f.diag, f.u, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
}

void BM_dot_serial(benchmark::State& state) {
  Fields f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kn::serial::dot(f.n, f.u, f.logmod));
}

void BM_dot_omp(benchmark::State& state) {
  Fields f(static_cast<int>(state.range(0)));
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(kn::dot(f.n, f.u, f.logmod));
}

void serial_sizes(benchmark::internal::Benchmark* b) {
  for (int n : {161, 321, 641}) b->Args({n});
}

void omp_sizes(benchmark::internal::Benchmark* b) {
  for (int n : {161, 321, 641})
    for (int t : {1, 2, 4}) b->Args({n, t});
  b->ArgNames({"n", "threads"});
}

}  // namespace

BENCHMARK(BM_laplacian_serial)->Apply(serial_sizes);
BENCHMARK(BM_laplacian_omp)->Apply(omp_sizes)->UseRealTime();
BENCHMARK(BM_residual_serial)->Apply(serial_sizes);
BENCHMARK(BM_residual_omp)->Apply(omp_sizes)->UseRealTime();
BENCHMARK(BM_operator_serial)->Apply(serial_sizes);
BENCHMARK(BM_operator_omp)->Apply(omp_sizes)->UseRealTime();
BENCHMARK(BM_dot_serial)->Apply(serial_sizes);
BENCHMARK(BM_dot_omp)->Apply(omp_sizes)->UseRealTime();

BENCHMARK_MAIN();
