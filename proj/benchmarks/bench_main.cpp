#include <benchmark/benchmark.h>

#include <random>

#include "stardeform/gauss.hpp"
#include "stardeform/halfseries.hpp"
#include "stardeform/poly.hpp"
#include "stardeform/residue.hpp"
#include "stardeform/theta.hpp"
#include "stardeform/vertex.hpp"

namespace {

sd::RationalPoly random_rational(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::vector<sd::QComplex> c(static_cast<std::size_t>(degree + 1));
  for (auto& x : c) x = sd::QComplex(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
  return sd::RationalPoly(std::move(c));
}

void BM_RationalStarProduct(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int degree = static_cast<int>(state.range(0));
  const auto f = random_rational(rng, degree);
  const auto g = random_rational(rng, degree);
  const sd::QComplex tau(mpq_class(1, 3), mpq_class(2, 5));
  for (auto _ : state) benchmark::DoNotOptimize(sd::star_product(f, g, tau));
}
BENCHMARK(BM_RationalStarProduct)->Arg(4)->Arg(8)->Arg(16);

void BM_GaussStar(benchmark::State& state) {
  sd::GaussPoly f, g;
  f.poly = sd::Poly{{1.0, 2.0, 0.5}};
  f.alpha = {0.1, 0.02};
  g.poly = sd::Poly{{-1.0, 0.0, 0.0, 1.0}};
  g.alpha = {-0.12, 0.0};
  const sd::Complex tau(0.5, -0.3);
  for (auto _ : state) benchmark::DoNotOptimize(sd::gauss_star(f, g, tau));
}
BENCHMARK(BM_GaussStar);

void BM_Theta3(benchmark::State& state) {
  double w = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sd::theta_eval(3, w, 1.0));
    w += 1e-3;
  }
}
BENCHMARK(BM_Theta3);

void BM_ResidueContour(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sd::residue_contour(0, 0.5, sd::Complex(1.0, 0.5), 0.3, 1.0, nodes));
}
BENCHMARK(BM_ResidueContour)->Arg(128)->Arg(256)->Arg(512);

void BM_EulerSeries(benchmark::State& state) {
  const auto order = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sd::euler_series(order));
}
BENCHMARK(BM_EulerSeries)->Arg(12)->Arg(24);

void BM_VertexCentral(benchmark::State& state) {
  const auto K = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sd::central_constraint_check(K));
}
BENCHMARK(BM_VertexCentral)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
