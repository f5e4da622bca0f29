#include "cooc/suite.hpp"

#include <benchmark/benchmark.h>

using namespace cooc;

namespace {

Model sized(std::size_t omega, std::size_t cod, std::uint64_t seed) {
  ModelGenerator g(seed);
  FiniteSpace w = make_space(omega);
  Measure p = g.probability(w, 64);
  std::vector<RandomObject> xs;
  for (int k = 0; k < 3; ++k) xs.push_back(g.object(w, cod, cod));
  return Model{w, p, xs};
}

void BM_pushforward(benchmark::State& st) {
  Model m = sized(static_cast<std::size_t>(st.range(0)), 8, 1);
  for (auto _ : st) benchmark::DoNotOptimize(pushforward(m.p, m.objects[0]));
}
BENCHMARK(BM_pushforward)->Arg(64)->Arg(1024)->Arg(16384);

void BM_cond_kernel(benchmark::State& st) {
  Model m = sized(static_cast<std::size_t>(st.range(0)), 8, 2);
  Event c = m.objects[2].preimage(Event(m.objects[2].codomain(), std::vector<std::size_t>{0, 1, 2, 3}));
  Event full = Event::full(m.omega);
  for (auto _ : st) benchmark::DoNotOptimize(cond_kernel(m.p, m.objects[0], m.objects[1], c, full));
}
BENCHMARK(BM_cond_kernel)->Arg(64)->Arg(1024)->Arg(16384);

void BM_density(benchmark::State& st) {
  Model m = sized(1024, static_cast<std::size_t>(st.range(0)), 3);
  ObjectFamily fam{{1, m.objects[0]}, {2, m.objects[1]}, {3, m.objects[2]}};
  for (auto _ : st) benchmark::DoNotOptimize(density_wrt_marginals(m.p, fam, IndexSet{1, 2, 3}));
}
BENCHMARK(BM_density)->Arg(4)->Arg(8)->Arg(16);

void BM_scm_solve(benchmark::State& st) {
  std::size_t n = static_cast<std::size_t>(st.range(0));
  FiniteSpace s = make_space(n);
  std::map<std::size_t, FiniteSpace> endo{{1, s}, {2, s}}, exo{{101, s}};
  Measure law = Measure::uniform(product_space(IndexSet{101}, {s}));
  Scm m = tabulate_scm(IndexSet{1, 2}, IndexSet{101}, endo, exo, law, [n](const auto& x, const auto& e) {
    return std::vector<std::size_t>{e[0], (x[0] + e[0]) % n};
  });
  for (auto _ : st) benchmark::DoNotOptimize(observational_distribution(m));
}
BENCHMARK(BM_scm_solve)->Arg(4)->Arg(16)->Arg(32);

}  // namespace
BENCHMARK_MAIN();
