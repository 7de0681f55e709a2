// bench/bench_kernels.cpp

// Copyright 2026  The dirseg authors

// See ../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels on pipeline-sized inputs.
// Arg 0 selects the implementation: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "dirseg/kernels.hpp"
#include "dirseg/matrix.hpp"
#include "dirseg/spectral.hpp"

using namespace dirseg;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r * c; ++i) m.data()[i] = g(rng);
  return m;
}

std::vector<double> random_signal(std::size_t n) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> s(n);
  for (double &v : s) v = u(rng);
  return s;
}

void BM_Stft(benchmark::State &state) {
  const auto samples = random_signal(44100 * 10);
  const auto window = make_window(WindowKind::Hann, 882);
  const std::size_t n = (samples.size() - 882) / 441 + 1;
  Matrix out(513, n);
  for (auto _ : state) {
    if (state.range(0) == 0) kernels::serial::stft_magnitudes(samples, window, 441, 1024, out);
    else kernels::parallel::stft_magnitudes(samples, window, 441, 1024, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_Stft)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_StackContext(benchmark::State &state) {
  const Matrix frames = random_matrix(513, 1000, 1);
  for (auto _ : state) {
    Matrix m = state.range(0) == 0 ? kernels::serial::stack_context(frames, 5) : kernels::parallel::stack_context(frames, 5);
    benchmark::DoNotOptimize(m.data());
  }
}
BENCHMARK(BM_StackContext)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Gram(benchmark::State &state) {
  const Matrix atoms = random_matrix(2565, 10, 2);
  const Matrix sf = random_matrix(2565, 1000, 3);
  for (auto _ : state) {
    Matrix g = state.range(0) == 0 ? kernels::serial::gram(atoms, sf) : kernels::parallel::gram(atoms, sf);
    benchmark::DoNotOptimize(g.data());
  }
}
BENCHMARK(BM_Gram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_WeightedSums(benchmark::State &state) {
  const Matrix x = random_matrix(2565, 1000, 4);
  const Matrix w = random_matrix(1000, 15, 5);
  for (auto _ : state) {
    Matrix s = state.range(0) == 0 ? kernels::serial::weighted_column_sums(x, w)
                                   : kernels::parallel::weighted_column_sums(x, w);
    benchmark::DoNotOptimize(s.data());
  }
}
BENCHMARK(BM_WeightedSums)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Posteriors(benchmark::State &state) {
  const Matrix dots = random_matrix(15, 5000, 6);
  std::vector<double> prior(15, std::log(1.0 / 15)), kappa(15, 200.0), ll(5000);
  Matrix gamma(5000, 15);
  for (auto _ : state) {
    if (state.range(0) == 0) kernels::serial::vmf_posteriors(dots, prior, kappa, gamma, ll);
    else kernels::parallel::vmf_posteriors(dots, prior, kappa, gamma, ll);
    benchmark::DoNotOptimize(gamma.data());
  }
}
BENCHMARK(BM_Posteriors)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PolyKernel(benchmark::State &state) {
  const Matrix x = random_matrix(10, 2000, 7);
  for (auto _ : state) {
    Matrix k = state.range(0) == 0 ? kernels::serial::poly_kernel_matrix(x, 0.1, 1.0, 3)
                                   : kernels::parallel::poly_kernel_matrix(x, 0.1, 1.0, 3);
    benchmark::DoNotOptimize(k.data());
  }
}
BENCHMARK(BM_PolyKernel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
