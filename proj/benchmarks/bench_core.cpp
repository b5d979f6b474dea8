#include <benchmark/benchmark.h>

#include <random>

#include "skewlab/charfol.hpp"
#include "skewlab/cocycles.hpp"
#include "skewlab/forms.hpp"
#include "skewlab/splitting.hpp"

using namespace skewlab;

namespace {

TrigField random_field(std::size_t dim, int radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  TrigField f(dim);
  const int zr = dim == 3 ? radius : 0;
  for (int a = 0; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b)
      for (int c = -zr; c <= zr; ++c) {
        const Frequency k = dim == 3 ? make_frequency({a, b, c}) : make_frequency({a, b});
        if (k == Frequency{} || !(k > negate(k))) continue;
        f.add_harmonic(k, u(rng), u(rng));
      }
  return f;
}

const ToralAutomorphism kCat = ToralAutomorphism::cat_map();
const TrigField kMu = TrigField::harmonic(2, make_frequency({1, 0}), 0.0, 0.1);

}  // namespace

static void BM_TrigProduct(benchmark::State& state) {
  const auto a = random_field(2, static_cast<int>(state.range(0)), 1);
  const auto b = random_field(2, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_TrigProduct)->Arg(2)->Arg(4)->Arg(8);

static void BM_ComposeLinear(benchmark::State& state) {
  const auto a = random_field(2, 8, 3);
  const IntMatrix m = kCat.matrix().power(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a.compose_linear(m));
}
BENCHMARK(BM_ComposeLinear)->Arg(1)->Arg(10)->Arg(30);

static void BM_Evaluate(benchmark::State& state) {
  const auto a = random_field(2, 8, 4);
  const std::array<double, 2> x{0.123, 0.456};
  for (auto _ : state) benchmark::DoNotOptimize(a(x));
}
BENCHMARK(BM_Evaluate);

static void BM_PeriodicPoints(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(periodic_points_exact(kCat, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_PeriodicPoints)->Arg(4)->Arg(8)->Arg(10);

static void BM_LivsicObstruction(benchmark::State& state) {
  const auto gamma = coboundary_from_transfer(kMu, kCat);
  for (auto _ : state) benchmark::DoNotOptimize(livsic_obstruction(gamma, kCat, 8, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_LivsicObstruction)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_FiberCorrection(benchmark::State& state) {
  TrigField gamma = TrigField::harmonic(2, make_frequency({1, 0}), 0.1, 0.0);
  gamma.add_harmonic(make_frequency({0, 1}), 0.0, 0.05);
  const SkewProduct F(kCat, gamma);
  for (auto _ : state)
    benchmark::DoNotOptimize(fiber_correction(F, Direction::kUnstable, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_FiberCorrection)->Arg(10)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_FrobeniusGrid(benchmark::State& state) {
  const OneForm alpha(random_field(3, 2, 5), random_field(3, 2, 6), random_field(3, 2, 7) + TrigField::constant(3, 1.0));
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid3 grid{n, n, n / 2};
  for (auto _ : state) benchmark::DoNotOptimize(frobenius_test(alpha, grid));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * grid.size()));
}
BENCHMARK(BM_FrobeniusGrid)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SingularPoints(benchmark::State& state) {
  const auto x = characteristic_field(OneForm::dt_minus_differential(kMu), SurfaceGraph{random_field(2, 2, 8)});
  SingularPointOptions opt;
  opt.seeds = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(singular_points(x, opt));
}
BENCHMARK(BM_SingularPoints)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
