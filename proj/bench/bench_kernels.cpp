// Serial reference kernels against their OpenMP counterparts.
//   ./build/bench/bench_kernels --benchmark_filter=Gram

#include <benchmark/benchmark.h>

#include <random>

#include "klb/basisfn.hpp"
#include "klb/kernels.hpp"
#include "klb/klcore.hpp"
#include "klb/spectral.hpp"

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd Y(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) Y(i, j) = gauss(rng);
  return Y;
}

void BM_GramSerial(benchmark::State& state) {
  const auto Y = random_matrix(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(klb::kernels::scaled_gram_serial(Y, 1.0 / Y.cols()));
}

void BM_GramParallel(benchmark::State& state) {
  const auto Y = random_matrix(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(klb::kernels::scaled_gram(Y, 1.0 / Y.cols()));
}

void BM_SamplesSerial(benchmark::State& state) {
  const auto grid = klb::make_grid(klb::GridKind::Uniform, static_cast<int>(state.range(0)), 0.0, 40.0);
  const auto family = klb::hydrogen_family(7);
  for (auto _ : state)
    benchmark::DoNotOptimize(klb::kernels::fill_samples_serial(family, grid.points, klb::Representation::rR));
}

void BM_SamplesParallel(benchmark::State& state) {
  const auto grid = klb::make_grid(klb::GridKind::Uniform, static_cast<int>(state.range(0)), 0.0, 40.0);
  const auto family = klb::hydrogen_family(7);
  for (auto _ : state)
    benchmark::DoNotOptimize(klb::kernels::fill_samples(family, grid.points, klb::Representation::rR));
}

klb::CollocationProblem scan_template() {
  const auto grid = klb::make_grid(klb::GridKind::Uniform, 20, 0.0, 40.0);
  const auto samples = klb::build_sample_matrix(klb::hydrogen_family(7), grid);
  const auto basis = klb::eig_sym(klb::covariance(klb::center_columns(samples)));
  return klb::make_problem(klb::BoundaryValueProblem{}, klb::interpolate(klb::truncate_basis(basis, klb::FixedM{8})));
}

void BM_ScanSerial(benchmark::State& state) {
  const auto templ = scan_template();
  const auto dense = klb::uniform_interior(0.0, 7.0, 400);
  for (auto _ : state)
    benchmark::DoNotOptimize(klb::energy_scan_serial(templ, -0.7, -0.3, static_cast<int>(state.range(0)), dense));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto templ = scan_template();
  const auto dense = klb::uniform_interior(0.0, 7.0, 400);
  for (auto _ : state)
    benchmark::DoNotOptimize(klb::energy_scan(templ, -0.7, -0.3, static_cast<int>(state.range(0)), dense));
}

void BM_Jacobi(benchmark::State& state) {
  const auto Y = random_matrix(state.range(0), 2 * state.range(0));
  const Eigen::MatrixXd K = klb::kernels::scaled_gram(Y, 1.0 / Y.cols());
  for (auto _ : state) benchmark::DoNotOptimize(klb::eig_sym(K));
}

}  // namespace

BENCHMARK(BM_GramSerial)->Args({20, 28})->Args({200, 2000})->Args({800, 4000});
BENCHMARK(BM_GramParallel)->Args({20, 28})->Args({200, 2000})->Args({800, 4000});
BENCHMARK(BM_SamplesSerial)->Arg(20)->Arg(2000);
BENCHMARK(BM_SamplesParallel)->Arg(20)->Arg(2000);
BENCHMARK(BM_ScanSerial)->Arg(41);
BENCHMARK(BM_ScanParallel)->Arg(41);
BENCHMARK(BM_Jacobi)->Arg(20)->Arg(100);

BENCHMARK_MAIN();
