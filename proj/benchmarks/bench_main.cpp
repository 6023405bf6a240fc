#include <benchmark/benchmark.h>

#include "qpt/dualpoly.hpp"
#include "qpt/instances.hpp"
#include "qpt/lin2.hpp"
#include "qpt/testers.hpp"

using namespace qpt;

namespace {

void BM_QuantumTesterFree(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto h = graph::PatternGraph::star(k);
  const auto g = instances::gen_h_free_instance(n, 1, h, 7);
  graph::DigraphSource src(g);
  std::uint64_t seed = 0;
  std::uint64_t charged = 0;
  for (auto _ : state) {
    graph::OracleView view(src);
    testers::QuantumTesterConfig cfg;
    cfg.seed = ++seed;
    auto v = testers::test_h_freeness_quantum(view, h, Rational(1, 20), cfg);
    charged = v.ledger.total();
    benchmark::DoNotOptimize(v);
  }
  state.counters["queries"] = static_cast<double>(charged);
}
BENCHMARK(BM_QuantumTesterFree)->Args({1024, 2})->Args({16384, 2})->Args({4096, 3})
    ->Unit(benchmark::kMillisecond);

void BM_ClassicalTesterFree(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = graph::PatternGraph::star(2);
  const auto g = instances::gen_h_free_instance(n, 1, h, 7);
  graph::DigraphSource src(g);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    graph::OracleView view(src);
    auto v = testers::test_h_freeness_classical(view, h, Rational(1, 20), {5.0, ++seed});
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ClassicalTesterFree)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_GenFarInstance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = graph::PatternGraph::star(2);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(instances::gen_far_h_instance(n, 1, h, Rational(1, 20), ++seed));
}
BENCHMARK(BM_GenFarInstance)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_BuildOmega(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dualpoly::build_omega(n, 2));
}
BENCHMARK(BM_BuildOmega)->Arg(64)->Arg(256)->Arg(960)->Unit(benchmark::kMillisecond);

void BM_PhdMeasure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto psi = dualpoly::build_psi(dualpoly::build_omega(n, 2).omega);
  for (auto _ : state) benchmark::DoNotOptimize(dualpoly::phd_measure(psi));
}
BENCHMARK(BM_PhdMeasure)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Correlation(benchmark::State& state) {
  const auto R = static_cast<std::size_t>(state.range(0));
  const auto psi = dualpoly::build_psi(dualpoly::build_omega(80 * R, 2).omega);
  const auto phi = dualpoly::PointMassDual::standard(R);
  for (auto _ : state) benchmark::DoNotOptimize(dualpoly::correlation(phi, psi, 2, Rational(1, 640)));
}
BENCHMARK(BM_Correlation)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_MinUnsat(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const auto a = *lin2::random_3sparse_system(n, 40, rng);
  const auto no = lin2::sample_no(a, 5);
  for (auto _ : state) benchmark::DoNotOptimize(lin2::min_unsat_fraction(no));
}
BENCHMARK(BM_MinUnsat)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_DistinguishingGame(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const auto hard = lin2::search_hard_matrix(10, 1, Rational(3, 5), 17);
  for (auto _ : state) benchmark::DoNotOptimize(lin2::distinguishing_advantage(hard.system, q));
}
BENCHMARK(BM_DistinguishingGame)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
