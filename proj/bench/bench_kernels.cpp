// Serial reference kernels against their OpenMP variants on jet matrices of the shipped webs.
#include <benchmark/benchmark.h>

#include <string>

#include "webgeom/bigfloat.hpp"
#include "webgeom/jets.hpp"
#include "webgeom/kernels.hpp"
#include "webgeom/linalg.hpp"
#include "webgeom/sampling.hpp"
#include "webgeom/web.hpp"

using namespace webgeom;

namespace {

struct Fixture {
  Web web;
  JetSystem<Expr> sys;
  std::vector<Point> points;
};

// Closed order-2 system of the transcendental four-web: 40 x 16 with atan/sqrt entries.
const Fixture& fixture() {
  static const Fixture f = [] {
    Web w = load_web(std::string(WEBGEOM_DATA_DIR) + "/webs/goldberg_w1.json");
    JetSystem<Expr> sys = build_closed(w, 1, 2);
    auto pts = sample_points(w.vars, 8, 0);
    return Fixture{std::move(w), std::move(sys), std::move(pts)};
  }();
  return f;
}

void BM_EvaluateSerial(benchmark::State& state) {
  PrecisionScope scope(kDefaultDigits);
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::evaluate_serial(f.sys.m, f.points[0]));
}

void BM_EvaluateParallel(benchmark::State& state) {
  PrecisionScope scope(kDefaultDigits);
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::evaluate_parallel(f.sys.m, f.points[0]));
}

Matrix<BigFloat> dense_matrix(std::size_t n) {
  Matrix<BigFloat> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = BigFloat(1) / BigFloat(i + 2 * j + 1);
  return m;
}

void BM_RankSerial(benchmark::State& state) {
  PrecisionScope scope(kDefaultDigits);
  Matrix<BigFloat> m = dense_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(numeric_rank(m, BigFloat("1e-20")));
}

void BM_RankParallel(benchmark::State& state) {
  PrecisionScope scope(kDefaultDigits);
  Matrix<BigFloat> m = dense_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::numeric_rank_parallel(m, BigFloat("1e-20")));
}

void BM_PointRanksSerial(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::ranks_serial(f.sys.m, f.points, kernels::RankOptions{}));
}

void BM_PointRanksParallel(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::ranks_parallel(f.sys.m, f.points, kernels::RankOptions{}));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RankSerial)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankParallel)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PointRanksSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PointRanksParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
