// Serial reference kernels against the OpenMP ones on random symmetric data.
#include <benchmark/benchmark.h>

#include <random>

#include "qtherm/kernels.hpp"

namespace {

namespace k = qtherm::kernels;

struct Data {
  Eigen::MatrixXd c, o;
  Eigen::VectorXd d, e, psi;
  std::vector<double> times;
};

Data make_data(Eigen::Index n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Data x;
  x.c = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return normal(rng); });
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x.c);
  x.c = qr.householderQ();
  x.d = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng) > 0 ? 1.0 : -1.0; });
  x.o = x.c.transpose() * x.d.asDiagonal() * x.c;
  x.e = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
  x.psi = x.c.col(0);
  for (int i = 0; i < 64; ++i) x.times.push_back(0.5 * i);
  return x;
}

template <auto Fn>
void bm_rotate(benchmark::State& state) {
  const Data x = make_data(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x.c, x.d));
}

template <auto Fn>
void bm_expectation(benchmark::State& state) {
  const Data x = make_data(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x.psi, x.o, x.e, x.times));
}

template <auto Fn>
void bm_otoc(benchmark::State& state) {
  const Data x = make_data(state.range(0));
  const std::vector<double> times(x.times.begin(), x.times.begin() + 8);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x.psi, x.o, x.o, x.e, times));
}

template <auto Fn>
void bm_dephased(benchmark::State& state) {
  const Data x = make_data(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x.psi, x.o, x.o));
}

template <auto Fn>
void bm_off_diagonal(benchmark::State& state) {
  const Data x = make_data(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x.psi, x.o));
}

}  // namespace

BENCHMARK(bm_rotate<k::serial::rotate>)->Name("rotate/serial")->Arg(256)->Arg(512);
BENCHMARK(bm_rotate<k::parallel::rotate>)->Name("rotate/parallel")->Arg(256)->Arg(512);
BENCHMARK(bm_expectation<k::serial::expectation>)->Name("expectation/serial")->Arg(256)->Arg(512);
BENCHMARK(bm_expectation<k::parallel::expectation>)->Name("expectation/parallel")->Arg(256)->Arg(512);
BENCHMARK(bm_otoc<k::serial::otoc>)->Name("otoc/serial")->Arg(128)->Arg(256);
BENCHMARK(bm_otoc<k::parallel::otoc>)->Name("otoc/parallel")->Arg(128)->Arg(256);
BENCHMARK(bm_dephased<k::serial::otoc_dephased>)->Name("otoc_dephased/serial")->Arg(64)->Arg(128);
BENCHMARK(bm_dephased<k::parallel::otoc_dephased>)->Name("otoc_dephased/parallel")->Arg(64)->Arg(128);
BENCHMARK(bm_off_diagonal<k::serial::off_diagonal_weight>)->Name("off_diagonal/serial")->Arg(512)->Arg(1024);
BENCHMARK(bm_off_diagonal<k::parallel::off_diagonal_weight>)->Name("off_diagonal/parallel")->Arg(512)->Arg(1024);

BENCHMARK_MAIN();
