#include <benchmark/benchmark.h>

#include "wlsa/homcount.hpp"
#include "wlsa/structure.hpp"

using namespace wlsa;

namespace {

Structure path(int n) {
  Signature sig{{{"E", 2}}};
  std::vector<std::string> els;
  std::vector<Constraint> cons;
  for (int i = 0; i < n; ++i) els.push_back("v" + std::to_string(i));
  // one orientation only, so the factor graph stays a tree
  for (int i = 0; i + 1 < n; ++i) cons.push_back({0, {i, i + 1}});
  return Structure(sig, "P" + std::to_string(n), els, cons);
}

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

void BM_count_hom_ftree(benchmark::State& state) {
  Structure t = path(static_cast<int>(state.range(0)));
  Structure a = complete(5);
  for (auto _ : state) benchmark::DoNotOptimize(count_hom_ftree(t, a));
}
BENCHMARK(BM_count_hom_ftree)->Arg(4)->Arg(8)->Arg(16);

void BM_count_hom_bruteforce(benchmark::State& state) {
  Structure t = path(static_cast<int>(state.range(0)));
  Structure a = complete(5);
  for (auto _ : state) benchmark::DoNotOptimize(count_hom_bruteforce(t, a));
}
BENCHMARK(BM_count_hom_bruteforce)->Arg(4)->Arg(8);

void BM_enumerate_ftrees(benchmark::State& state) {
  Signature sig{{{"E", 2}}};
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_ftrees(sig, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_enumerate_ftrees)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
