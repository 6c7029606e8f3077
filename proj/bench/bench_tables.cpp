#include <benchmark/benchmark.h>

#include "wroot/bench.hpp"

namespace {

std::vector<std::string> table_methods(const wroot::PublishedTable& t)
{
  std::vector<std::string> methods;
  for (const auto& row : t.rows) methods.push_back(row.method);
  return methods;
}

void BM_TablesParallel(benchmark::State& state)
{
  const wroot::PublishedTable& t = wroot::published_table(static_cast<int>(state.range(0)));
  const auto methods = table_methods(t);
  for (auto _ : state) benchmark::DoNotOptimize(wroot::run_benchmark(t.problem_id, methods, {t.x0}));
}

void BM_TablesSerial(benchmark::State& state)
{
  const wroot::PublishedTable& t = wroot::published_table(static_cast<int>(state.range(0)));
  const auto methods = table_methods(t);
  const wroot::Problem p = wroot::builtin_problem(t.problem_id, wroot::PrecisionContext(200));
  for (auto _ : state) benchmark::DoNotOptimize(wroot::run_benchmark_serial(p, methods, {t.x0}));
}

}  // namespace

BENCHMARK(BM_TablesParallel)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TablesSerial)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
