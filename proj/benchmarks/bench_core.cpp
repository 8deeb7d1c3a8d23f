#include <benchmark/benchmark.h>

#include "nangle/algebraicity.hpp"
#include "nangle/angulation.hpp"
#include "nangle/axioms.hpp"
#include "nangle/homotopy.hpp"
#include "nangle/random.hpp"

using namespace nangle;

static void BM_NormalForm(benchmark::State& state) {
  const auto ring = Ring::parse("Z/9");
  const auto size = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  std::vector<RMatrix> ms;
  for (int i = 0; i < 16; ++i) ms.push_back(random_matrix(ring, size, size, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(ms[i++ % ms.size()]));
}
BENCHMARK(BM_NormalForm)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_Classify(benchmark::State& state) {
  const auto ring = Ring::parse("Z/25");
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  std::vector<NSequence> xs;
  for (int i = 0; i < 16; ++i) xs.push_back(random_member(ring, n, ring->one(), 3, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(classify(xs[i++ % xs.size()]));
}
BENCHMARK(BM_Classify)->Arg(4)->Arg(6)->Arg(8);

static void BM_FindHomotopy(benchmark::State& state) {
  const auto ring = Ring::parse("Z/4");
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const auto x = random_member(ring, n, ring->one(), 2, rng);
  const auto id = SeqMorphism::identity(x);
  const auto zero = SeqMorphism::zero(x, x);
  for (auto _ : state) benchmark::DoNotOptimize(find_homotopy(id, zero));
}
BENCHMARK(BM_FindHomotopy)->Arg(3)->Arg(4)->Arg(6);

static void BM_CompleteMorphism(benchmark::State& state) {
  const auto ring = Ring::parse("Z/9");
  Rng rng(4);
  const auto x = random_member(ring, 4, ring->one(), 3, rng);
  const auto y = random_member(ring, 4, ring->one(), 3, rng);
  const auto [phi0, phi1] = random_commuting_square(x, y, rng);
  for (auto _ : state) benchmark::DoNotOptimize(complete_morphism(x, y, phi0, phi1));
}
BENCHMARK(BM_CompleteMorphism);

static void BM_AxiomTrial(benchmark::State& state) {
  const auto ring = Ring::parse("Z/4");
  AxiomSuiteOptions opts;
  opts.trials = 1;
  opts.threads = 1;
  for (auto _ : state) {
    opts.seed++;
    benchmark::DoNotOptimize(run_axiom_suite(ring, 4, ring->one(), opts));
  }
}
BENCHMARK(BM_AxiomTrial);

static void BM_AlgebraicityVerdict(benchmark::State& state) {
  const auto ring = Ring::parse("Z/4");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(algebraicity_verdict(ring, n));
}
BENCHMARK(BM_AlgebraicityVerdict)->Arg(11)->Arg(12)->Arg(51);

BENCHMARK_MAIN();
