#include <benchmark/benchmark.h>

#include <random>

#include "support/fixtures.hpp"
#include "toricstack/cox.hpp"
#include "toricstack/gerbe.hpp"
#include "toricstack/lattice.hpp"
#include "toricstack/oracle.hpp"

using namespace toricstack;
using namespace toricstack::testing;

namespace {

IntegerMatrix square(std::size_t n, long max_entry, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-max_entry, max_entry);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  return m;
}

std::vector<StackyData> data_sets(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<StackyData> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_spanning_data(rng, 3, 6, 5, 2, 4));
  return out;
}

}  // namespace

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto m = square(static_cast<std::size_t>(state.range(0)), 20, 1);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->DenseRange(2, 12, 2);

static void BM_OracleVerifySnf(benchmark::State& state) {
  const auto m = square(static_cast<std::size_t>(state.range(0)), 20, 1);
  const auto dec = smith_normal_form(m);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::verify_snf(m, dec));
}
BENCHMARK(BM_OracleVerifySnf)->DenseRange(2, 8, 2);

static void BM_PointStabilizer(benchmark::State& state) {
  const auto sets = data_sets(50, 7);
  for (auto _ : state)
    for (const auto& d : sets)
      for (const auto& cone : d.fan.cones) benchmark::DoNotOptimize(point_stabilizer(d, cone));
}
BENCHMARK(BM_PointStabilizer);

static void BM_OracleStabilizerOrder(benchmark::State& state) {
  const auto sets = data_sets(50, 7);
  for (auto _ : state)
    for (const auto& d : sets)
      for (const auto& cone : d.fan.cones) benchmark::DoNotOptimize(oracle::stabilizer_order(d, cone));
}
BENCHMARK(BM_OracleStabilizerOrder);

static void BM_DivisibleInQuotient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rel = square(n, 20, 3);
  const IntegerVector v(n, Integer(5));
  for (auto _ : state) benchmark::DoNotOptimize(divisible_in_quotient(v, Integer(6), rel));
}
BENCHMARK(BM_DivisibleInQuotient)->DenseRange(2, 8, 2);

static void BM_OracleDivisibility(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rel = square(n, 20, 3);
  const IntegerVector v(n, Integer(5));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::divisibility(v, Integer(6), rel));
}
BENCHMARK(BM_OracleDivisibility)->DenseRange(2, 4, 1);

static void BM_Canonicalize(benchmark::State& state) {
  StackyData data{p1_fan(), {Integer(4), Integer(6), Integer(10), Integer(9)}, IntegerMatrix(4, 2)};
  for (std::size_t i = 0; i < 4; ++i) data.b(i, 1) = static_cast<long>(i) + 1;
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(data));
}
BENCHMARK(BM_Canonicalize);

static void BM_ConditionBSampling(benchmark::State& state) {
  const auto p2 = make_rigid(projective_space_fan(2));
  const auto p1 = make_rigid(p1_fan());
  const MorphismData md{p2, p1, {mono(3, {1, 0, 0}) + mono(3, {0, 1, 0}), mono(3, {0, 0, 1})}, {}};
  SamplingOptions options;
  options.budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_condition_b(md, options));
}
BENCHMARK(BM_ConditionBSampling)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK_MAIN();
