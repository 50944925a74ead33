#include <benchmark/benchmark.h>

#include "classicality/geometry.hpp"
#include "classicality/polynomial.hpp"
#include "classicality/quadrature.hpp"

using namespace classicality;

namespace {

SquareMatrix<Real> sample_matrix(std::size_t n) {
  SquareMatrix<Real> m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Real(counter_uniform(7, r, c)) - Real(0.5);
  }
  return m;
}

void BM_PermanentGrayCode(benchmark::State& state) {
  const auto m = sample_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(permanent(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PermanentGrayCode)->DenseRange(4, 16, 4);

// Regular stratum of size n: the densest face in the orbit.
template <class T>
void face_benchmark(benchmark::State& state, Method method, PermanentKernel kernel = PermanentKernel::Grouped) {
  const std::vector<int> ones(static_cast<std::size_t>(state.range(0)), 1);
  const DegeneracyType face(ones);
  const auto forms = vandermonde_forms<T>(face.multiplicities());
  const auto simplex = face_simplex<T>(face);
  for (auto _ : state) {
    if (method == Method::LA) {
      benchmark::DoNotOptimize(integrate_la(forms, simplex, kernel).value);
    } else {
      benchmark::DoNotOptimize(integrate_lasserre(forms, simplex).value);
    }
  }
}

void BM_LaGroupedRational(benchmark::State& s) { face_benchmark<Rational>(s, Method::LA); }
void BM_LaGrayCodeRational(benchmark::State& s) { face_benchmark<Rational>(s, Method::LA, PermanentKernel::GrayCode); }
void BM_LaGroupedReal(benchmark::State& s) { face_benchmark<Real>(s, Method::LA); }
void BM_LasserreRational(benchmark::State& s) { face_benchmark<Rational>(s, Method::Lasserre); }
void BM_LasserreReal(benchmark::State& s) { face_benchmark<Real>(s, Method::Lasserre); }

BENCHMARK(BM_LaGroupedRational)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LaGrayCodeRational)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LaGroupedReal)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LasserreRational)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LasserreReal)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

void BM_MonteCarloSamples(benchmark::State& state) {
  const DegeneracyType face({1, 1, 1});
  const auto forms = vandermonde_forms<Real>(face.multiplicities());
  const auto simplex = face_simplex<Real>(face);
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_mc(forms, simplex, samples, kDefaultSeed).value);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_MonteCarloSamples)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace
