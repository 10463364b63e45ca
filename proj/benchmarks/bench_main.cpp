#include <benchmark/benchmark.h>

#include <random>

#include "baerinv/baer.hpp"
#include "baerinv/intlin.hpp"
#include "baerinv/magnus.hpp"
#include "baerinv/nilform.hpp"

namespace {

using namespace baerinv;

Word random_word(std::mt19937& rng, int length) {
  static constexpr std::string_view kLetters = "xyXY";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string text;
  for (int i = 0; i < length; ++i) text.push_back(kLetters[static_cast<std::size_t>(pick(rng))]);
  return Word::parse(text);
}

void BM_SeriesMultiply(benchmark::State& state) {
  const int cap = static_cast<int>(state.range(0));
  std::mt19937 rng(1);
  const auto a = magnus_expand(random_word(rng, 12), cap);
  const auto b = magnus_expand(random_word(rng, 12), cap);
  for (auto _ : state) benchmark::DoNotOptimize(series_multiply(a, b));
}
BENCHMARK(BM_SeriesMultiply)->DenseRange(4, 10, 2);

void BM_MagnusExpandCommutator(benchmark::State& state) {
  const int cap = static_cast<int>(state.range(0));
  const auto e = CommutatorExpr::parse("[x^5,y,x,y,y]");
  for (auto _ : state) benchmark::DoNotOptimize(magnus_expand(e, cap));
}
BENCHMARK(BM_MagnusExpandCommutator)->DenseRange(5, 9, 2);

void BM_Coordinates(benchmark::State& state) {
  const int high = static_cast<int>(state.range(0));
  const auto g = magnus_expand(CommutatorExpr::parse("[x^7,y^3]"), high);
  for (auto _ : state) benchmark::DoNotOptimize(coordinates(g, 2, high));
}
BENCHMARK(BM_Coordinates)->DenseRange(4, 9, 1);

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(2);
  std::uniform_int_distribution<long> entry(-30, 30);
  IntMatrix m(3 * n, n);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = entry(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(4, 32);

// The head-row cache persists across iterations, so this measures the
// assembly and Smith form after the first iteration fills it.
void BM_BaerInvariant(benchmark::State& state) {
  const ProblemSpec spec{6, 10, 2, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(baer_invariant(spec));
}
BENCHMARK(BM_BaerInvariant)->DenseRange(2, 6, 1);

void BM_RhoMatrixUncached(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  std::int64_t r = 2;
  for (auto _ : state) {
    // Fresh exponents defeat the cache.
    benchmark::DoNotOptimize(rho_matrix(ProblemSpec{r, r + 1, 2, c}, c + 2));
    ++r;
  }
}
BENCHMARK(BM_RhoMatrixUncached)->DenseRange(2, 5, 1);

}  // namespace
BENCHMARK_MAIN();
