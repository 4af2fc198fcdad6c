// Serial reference against the OpenMP kernel for twisted-class partitions.

#include "wreath/oracle.hpp"
#include "wreath/reidemeister.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

using namespace wreath;
using namespace wreath::finite;

namespace {

struct Case {
  FiniteWreathGroup group;
  FiniteAutomorphism f;
};

const Case& model(int id) {
  static const Case cases[] = {
      [] {
        auto g = build_group(3, 2, 2);
        auto f = descend_automorphism(g, construct_finite_R(3, 2));
        return Case{std::move(g), std::move(f)};
      }(),
      [] {
        auto g = build_group(5, 4, 1);
        auto f = descend_automorphism(g, construct_finite_R(5, 1));
        return Case{std::move(g), std::move(f)};
      }(),
  };
  return cases[id];
}

void BM_serial(benchmark::State& state) {
  const auto& c = model(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(twisted_classes_serial(c.group, c.f).count());
  state.SetLabel(c.group.label());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.group.order() * c.group.order()));
}

void BM_parallel(benchmark::State& state) {
  const auto& c = model(static_cast<int>(state.range(0)));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(twisted_classes_parallel(c.group, c.f).count());
  omp_set_num_threads(saved);
  state.SetLabel(c.group.label() + ", " + std::to_string(state.range(1)) + " threads");
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.group.order() * c.group.order()));
}

void BM_conjugacy(benchmark::State& state) {
  const auto& c = model(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(conjugacy_classes(c.group).count());
  state.SetLabel(c.group.label());
}

} // namespace

BENCHMARK(BM_serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_parallel)->ArgsProduct({{0, 1}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_conjugacy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
