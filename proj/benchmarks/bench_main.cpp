#include <benchmark/benchmark.h>

#include "nls4/dispersive.hpp"
#include "nls4/evolution.hpp"
#include "nls4/imethod.hpp"
#include "nls4/multilinear.hpp"

using namespace nls4;

static void BM_fft(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Field f = random_field(make_grid(100, n), n / 4, 1.0, 1);
  CVec buf = f.u;
  for (auto _ : st) {
    fft_inplace(buf, -1);
    fft_inplace(buf, +1);
    benchmark::DoNotOptimize(buf.data());
  }
  st.SetItemsProcessed(st.iterations() * 2);
}
BENCHMARK(BM_fft)->RangeMultiplier(4)->Range(1 << 10, 1 << 18);

static void BM_strang_step(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Grid g = make_grid(200, n);
  EvolutionConfig cfg;
  cfg.dt = 1e-4;
  Stepper stepper(g, cfg);
  CVec c = to_spectrum(make_gaussian(g, 1.0, 8.0, 0.0, 0.0)).c;
  for (auto _ : st) {
    stepper.step(c, cfg.dt);
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(BM_strang_step)->Arg(1024)->Arg(4096)->Arg(16384);

static void BM_ifrk4_step(benchmark::State& st) {
  const Grid g = make_grid(200, static_cast<int>(st.range(0)));
  EvolutionConfig cfg;
  cfg.scheme = Scheme::ifrk4;
  cfg.dt = 1e-4;
  Stepper stepper(g, cfg);
  CVec c = to_spectrum(make_gaussian(g, 1.0, 8.0, 0.0, 0.0)).c;
  for (auto _ : st) {
    stepper.step(c, cfg.dt);
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(BM_ifrk4_step)->Arg(4096);

static void BM_correction_term(benchmark::State& st) {
  const int K = static_cast<int>(st.range(0));
  int M = 16;
  while (M < 4 * K + 2) M *= 2;
  const Grid g = make_grid(2 * pi, M);
  const Energy4Evaluator ev(g, {4.0, -0.5}, K, {-1, -1.0});
  const Spectrum s = to_spectrum(random_field(g, K, 0.3, 2));
  for (auto _ : st) benchmark::DoNotOptimize(ev.correction(s));
}
BENCHMARK(BM_correction_term)->Arg(16)->Arg(32)->Arg(64);

static void BM_lambda6(benchmark::State& st) {
  const int K = static_cast<int>(st.range(0));
  const Grid g = make_grid(8 * pi, 64);
  const ModeSet modes = make_modes(g, K);
  const Spectrum s = to_spectrum(random_field(g, K, 0.3, 3));
  const IMethodParams p{1.0, -0.5};
  const XiSymbol m6 = [&](const double* xi) { return symbol_M6(xi, p); };
  for (auto _ : st) benchmark::DoNotOptimize(lambda_n(6, m6, s, modes).value);
}
BENCHMARK(BM_lambda6)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_kernel(benchmark::State& st) {
  const double x = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernel_K(1.0, x, 0.0));
}
BENCHMARK(BM_kernel)->Arg(0)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
