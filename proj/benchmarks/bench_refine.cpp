#include <benchmark/benchmark.h>

#include "wlsa/equitable.hpp"
#include "wlsa/refine.hpp"
#include "wlsa/stark.hpp"
#include "wlsa/structure.hpp"

using namespace wlsa;

namespace {

Structure cycle(int n) {
  Signature sig{{{"E", 2}}};
  std::vector<std::string> els;
  for (int i = 0; i < n; ++i) els.push_back("v" + std::to_string(i));
  std::vector<Constraint> cons;
  for (int i = 0; i < n; ++i) {
    cons.push_back({0, {i, (i + 1) % n}});
    cons.push_back({0, {(i + 1) % n, i}});
  }
  return Structure(sig, "C" + std::to_string(n), els, cons);
}

void BM_joint_refine(benchmark::State& state) {
  Structure a = cycle(static_cast<int>(state.range(0)));
  Structure b = cycle(static_cast<int>(state.range(0)) / 2);
  Structure bb = disjoint_union(b, b);
  for (auto _ : state) benchmark::DoNotOptimize(joint_refine({a, bb}));
}
BENCHMARK(BM_joint_refine)->Arg(6)->Arg(30)->Arg(120);

void BM_common_equitable(benchmark::State& state) {
  Structure a = cycle(static_cast<int>(state.range(0)));
  Structure b = cycle(static_cast<int>(state.range(0)) / 2);
  Structure bb = disjoint_union(b, b);
  for (auto _ : state) benchmark::DoNotOptimize(common_equitable_partition(a, bb));
}
BENCHMARK(BM_common_equitable)->Arg(6)->Arg(30)->Arg(120);

void BM_star_structure(benchmark::State& state) {
  Structure a = cycle(6);
  for (auto _ : state)
    benchmark::DoNotOptimize(star_structure(a, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_star_structure)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
