#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "resq/completion.hpp"
#include "resq/fep.hpp"
#include "resq/fixtures.hpp"
#include "resq/logic.hpp"
#include "resq/model_search.hpp"
#include "resq/order.hpp"
#include "resq/termorder.hpp"

namespace {

using namespace resq;

void BM_LeqC(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::pair<FElement, FElement>> pairs;
  for (int i = 0; i < 256; ++i) pairs.emplace_back(random_term(rng, state.range(0), 3), random_term(rng, state.range(0), 3));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [s, t] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(leq_c(s, t));
  }
}
BENCHMARK(BM_LeqC)->Arg(4)->Arg(6)->Arg(8);

void BM_ResidualF(benchmark::State& state) {
  std::mt19937_64 rng(2);
  FElement r = random_term(rng, 3, 3), t = FElement::dot(r, random_term(rng, state.range(0), 3));
  for (auto _ : state) benchmark::DoNotOptimize(residual_f(r, t, Op::Dot, Side::Left));
}
BENCHMARK(BM_ResidualF)->Arg(4)->Arg(6);

void BM_DmCompletion(benchmark::State& state) {
  std::vector<Poset> ps = enumerate_posets(state.range(0));
  for (auto _ : state)
    for (const Poset& p : ps) benchmark::DoNotOptimize(dm_completion(p).size());
  state.SetItemsProcessed(state.iterations() * ps.size());
}
BENCHMARK(BM_DmCompletion)->Arg(4)->Arg(5);

void BM_FepGodel(benchmark::State& state) {
  ResiduatedLattice g = fixtures::godel_chain(state.range(0));
  std::vector<Index> b;
  for (Index i = 0; i < g.size(); ++i) b.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(fep_extend_hrl(g, b).old.size());
}
BENCHMARK(BM_FepGodel)->Arg(4)->Arg(6);

void BM_EnumerateRl(benchmark::State& state) {
  Theory th = theories::residuated_lattice();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_algebras(th, state.range(0)).size());
}
BENCHMARK(BM_EnumerateRl)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_NoncommutativeSearch(benchmark::State& state) {
  Theory th = theories::integral_rl();
  QuasiEquation q{{}, parse_equation(th.sig, "(mul x y) = (mul y x)")};
  SearchOptions opt;
  opt.jobs = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(countermodel_search(th, q, opt).found.has_value());
}
BENCHMARK(BM_NoncommutativeSearch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
