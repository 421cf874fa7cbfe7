#include <benchmark/benchmark.h>

#include <random>

#include "rbr/rbr.hpp"

namespace {

void BM_VerifyCounter(benchmark::State& state) {
  rbr::Protocol p = rbr::desugar(rbr::gen_counter(static_cast<int>(state.range(0))));
  auto t = p.state_set(p.copies_of("qE"));
  std::size_t nodes = 0;
  for (auto _ : state) {
    auto r = rbr::verify(p, t);
    nodes = r.nodes;
    benchmark::DoNotOptimize(r.round);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_VerifyCounter)->DenseRange(2, 8, 2);

void BM_VerifyFig1(benchmark::State& state) {
  rbr::Protocol p = rbr::gen_fig1();
  for (auto _ : state) benchmark::DoNotOptimize(rbr::verify(p, p.state("qE")).verdict);
}
BENCHMARK(BM_VerifyFig1);

void BM_VerifyAgreement(benchmark::State& state) {
  rbr::Protocol p = rbr::desugar(rbr::gen_aspnes_agreement());
  auto t = p.state_set(p.copies_of("qF"));
  rbr::VerifyOptions opt;
  opt.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rbr::verify(p, t, opt).verdict);
}
BENCHMARK(BM_VerifyAgreement)->Arg(1)->Arg(4);

void BM_Saturation(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  rbr::Protocol p = rbr::desugar(rbr::gen_counter(m));
  for (auto _ : state) benchmark::DoNotOptimize(rbr::round_saturation_reach(p, 1 << (m - 1)).rounds.size());
}
BENCHMARK(BM_Saturation)->DenseRange(2, 8, 2);

void BM_VerifyQbf(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto f = rbr::random_qbf(rng, static_cast<int>(state.range(0)), 4);
  rbr::Protocol p = rbr::desugar(rbr::gen_qbf(f));
  auto t = p.state_set(p.copies_of("qF"));
  for (auto _ : state) benchmark::DoNotOptimize(rbr::verify(p, t).verdict);
}
BENCHMARK(BM_VerifyQbf)->Arg(2)->Arg(4)->Arg(6);

void BM_BoundedAbstract(benchmark::State& state) {
  rbr::Protocol p = rbr::desugar(rbr::gen_aspnes_agreement());
  int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rbr::bounded_abstract_reach(p, K).coverable.size());
}
BENCHMARK(BM_BoundedAbstract)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
