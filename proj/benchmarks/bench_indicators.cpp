#include <benchmark/benchmark.h>

#include "classicality/indicators.hpp"

using namespace classicality;

namespace {

void BM_QubitIndicator(benchmark::State& state) {
  const auto pi = spectrum_from_moduli(2, {});
  for (auto _ : state) benchmark::DoNotOptimize(indicator(2, DegeneracyType({1, 1}), pi).value);
}
BENCHMARK(BM_QubitIndicator)->Unit(benchmark::kMicrosecond);

void BM_QutritRegularExact(benchmark::State& state) {
  const auto pi = KernelSpectrum<Rational>::create({Rational(1), Rational(1), Rational(-1)});
  for (auto _ : state) benchmark::DoNotOptimize(indicator(3, DegeneracyType({1, 1, 1}), pi).value);
}
BENCHMARK(BM_QutritRegularExact)->Unit(benchmark::kMicrosecond);

void BM_QutritDegenerateExact(benchmark::State& state) {
  const auto pi = KernelSpectrum<Rational>::create({Rational(1), Rational(1), Rational(-1)});
  for (auto _ : state) benchmark::DoNotOptimize(indicator(3, DegeneracyType({2, 1}), pi).value);
}
BENCHMARK(BM_QutritDegenerateExact)->Unit(benchmark::kMicrosecond);

void BM_QuatritStratum(benchmark::State& state, std::vector<int> blocks, Method method) {
  const auto [pi, angles] = spectrum_from_chamber_fractions(4, std::vector<Real>{Real(0.4), Real(0.6)});
  const DegeneracyType stratum(blocks);
  IndicatorOptions options;
  options.method = method;
  options.mc_samples = 100'000;
  for (auto _ : state) benchmark::DoNotOptimize(indicator(4, stratum, pi, options).value);
}
BENCHMARK_CAPTURE(BM_QuatritStratum, regular_la, std::vector<int>{1, 1, 1, 1}, Method::LA)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_QuatritStratum, regular_lasserre, std::vector<int>{1, 1, 1, 1}, Method::Lasserre)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_QuatritStratum, s211_la, std::vector<int>{2, 1, 1}, Method::LA)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_QuatritStratum, regular_mc, std::vector<int>{1, 1, 1, 1}, Method::MonteCarlo)
    ->Unit(benchmark::kMillisecond);

void BM_HierarchyQuatrit(benchmark::State& state) {
  const auto [pi, angles] = spectrum_from_chamber_fractions(4, std::vector<Real>{Real(0.4), Real(0.6)});
  for (auto _ : state) benchmark::DoNotOptimize(hierarchy_check(4, pi).conjecture_holds);
}
BENCHMARK(BM_HierarchyQuatrit)->Unit(benchmark::kMillisecond);

}  // namespace
