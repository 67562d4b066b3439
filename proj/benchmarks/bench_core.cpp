#include <benchmark/benchmark.h>

#include "spectrabound/linalg.hpp"
#include "spectrabound/negativity.hpp"
#include "spectrabound/pred_spectrum.hpp"
#include "spectrabound/spectral_criteria.hpp"

using namespace spectrabound;

namespace {

void BM_HaarUnitary(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(d, ++seed));
}
BENCHMARK(BM_HaarUnitary)->Arg(4)->Arg(9)->Arg(36);

void BM_Negativity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BipartiteDims dims(n, n);
  const auto rho = pps_state(SchmidtVector::uniform(n), dims, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(negativity(rho).value);
}
BENCHMARK(BM_Negativity)->Arg(2)->Arg(3)->Arg(6);

void BM_HullTest(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto s = Spectrum::pseudo_pure(BipartiteDims(n, n), 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(hull_test_holds(s, {-1.0, 3.0}).holds);
}
BENCHMARK(BM_HullTest)->Arg(2)->Arg(6)->Arg(16);

void BM_StructuredSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = n - i;
  const auto psi = SchmidtVector::normalized(a);
  for (auto _ : state) benchmark::DoNotOptimize(xi_spectrum_structured(psi, 1, BipartiteDims(n, n)));
}
BENCHMARK(BM_StructuredSpectrum)->Arg(4)->Arg(16)->Arg(64);

void BM_MaxGamma(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto s = Spectrum::pseudo_pure(BipartiteDims(n, n), 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(max_gamma_negfs(s).gamma);
}
BENCHMARK(BM_MaxGamma)->Arg(2)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
