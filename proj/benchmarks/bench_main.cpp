#include <random>

#include <benchmark/benchmark.h>

#include "antilinear/construct.hpp"
#include "antilinear/search.hpp"
#include "antilinear/structure.hpp"
#include "antilinear/takagi.hpp"
#include "antilinear/unitary.hpp"
#include "antilinear/verify.hpp"

using namespace antilinear;

static void BM_MaxSets(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(max_sets(d));
}
BENCHMARK(BM_MaxSets)->RangeMultiplier(2)->Range(2, 16);

static void BM_VerifyMaxSet(benchmark::State& state) {
  const OrthoSet set = max_sets(static_cast<int>(state.range(0))).conj;
  for (auto _ : state) benchmark::DoNotOptimize(verify_set(set, 1e-10));
}
BENCHMARK(BM_VerifyMaxSet)->RangeMultiplier(2)->Range(2, 16);

static void BM_Gram(benchmark::State& state) {
  const OperatorBasis basis = basis_plus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gram(basis.ops));
}
BENCHMARK(BM_Gram)->DenseRange(2, 8, 2);

static void BM_Takagi(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const Matrix g = random_matrix(d, rng);
  const Matrix m = g + g.transpose();
  for (auto _ : state) benchmark::DoNotOptimize(takagi(m));
}
BENCHMARK(BM_Takagi)->DenseRange(2, 16, 2);

static void BM_ObjectiveGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  std::mt19937_64 rng(2);
  const OrthogonalityObjective objective(d, SetKind::conjugation);
  std::vector<Matrix> bases;
  for (int a = 0; a < k; ++a) bases.push_back(haar_unitary(d, rng));
  const Eigen::VectorXd params = Eigen::VectorXd::Zero(k * objective.params_per_op());
  Eigen::VectorXd gradient;
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective.value_and_gradient(bases, params, gradient));
  }
}
BENCHMARK(BM_ObjectiveGradient)->Args({2, 3})->Args({3, 6})->Args({4, 10})->Args({8, 36});

static void BM_Search(benchmark::State& state) {
  SearchConfig config = make_search_config(static_cast<int>(state.range(0)), SetKind::conjugation,
                                           static_cast<int>(state.range(1)));
  config.restarts = 1;
  config.seed = 3;
  for (auto _ : state) benchmark::DoNotOptimize(search_max_set(config));
}
BENCHMARK(BM_Search)->Args({2, 3})->Args({3, 3})->Args({3, 6})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
