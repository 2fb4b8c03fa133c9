#include <benchmark/benchmark.h>

#include "wlsa/relax.hpp"
#include "wlsa/structure.hpp"

using namespace wlsa;

namespace {

Structure complete(int n) {
  Signature sig{{{"E", 2}}};
  std::vector<std::string> els;
  std::vector<Constraint> cons;
  for (int i = 0; i < n; ++i) els.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) cons.push_back({0, {i, j}});
  return Structure(sig, "K" + std::to_string(n), els, cons);
}

Structure cycle(int n) {
  Signature sig{{{"E", 2}}};
  std::vector<std::string> els;
  std::vector<Constraint> cons;
  for (int i = 0; i < n; ++i) els.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    cons.push_back({0, {i, (i + 1) % n}});
    cons.push_back({0, {(i + 1) % n, i}});
  }
  return Structure(sig, "C" + std::to_string(n), els, cons);
}

void BM_sa_feasibility(benchmark::State& state) {
  Structure a = complete(3), b = complete(2);
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    LinearSystem sys = build_sa_system(a, b, k);
    benchmark::DoNotOptimize(lp_feasibility(sys));
  }
}
BENCHMARK(BM_sa_feasibility)->Arg(1)->Arg(2)->Arg(3);

void BM_sa_rank(benchmark::State& state) {
  Structure a = complete(3), b = complete(2);
  for (auto _ : state) benchmark::DoNotOptimize(sa_rank(a, b, 4));
}
BENCHMARK(BM_sa_rank);

void BM_frac_iso(benchmark::State& state) {
  Structure a = cycle(static_cast<int>(state.range(0)));
  Structure b = cycle(static_cast<int>(state.range(0)) / 2);
  Structure bb = disjoint_union(b, b);
  for (auto _ : state) {
    LinearSystem sys = build_frac_iso_system(a, bb);
    benchmark::DoNotOptimize(lp_feasibility(sys));
  }
}
BENCHMARK(BM_frac_iso)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
