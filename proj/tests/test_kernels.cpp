// tests/test_kernels.cpp

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

// The OpenMP kernels must reproduce the serial reference bit for bit.

#include <cmath>
#include <numbers>

#include "dirseg/kernels.hpp"
#include "dirseg/spectral.hpp"
#include "test_support.hpp"

using namespace dirseg;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(r, c);
  for (std::size_t j = 0; j < c; ++j)
    for (auto &v : m.col(j)) v = u(rng);
  return m;
}

struct ThreadGuard {
  int saved = kernels::max_threads();
  ~ThreadGuard() { kernels::set_threads(saved); }
};

}  // namespace

TEST_CASE("stft kernels agree") {
  ThreadGuard g;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> x(30000);
  for (double &v : x) v = u(rng);
  const auto win = make_window(WindowKind::Hann, 882);
  const std::size_t n = (x.size() - 882) / 441 + 1;
  Matrix a(513, n), b(513, n);
  kernels::serial::stft_magnitudes(x, win, 441, 1024, a);
  for (int t : {1, 2, 4}) {
    kernels::set_threads(t);
    kernels::parallel::stft_magnitudes(x, win, 441, 1024, b);
    CHECK(a == b);
  }
}

TEST_CASE("context, normalization and products agree") {
  ThreadGuard g;
  const Matrix frames = random_matrix(17, 40, 2, 0.0, 1.0);
  for (int t : {1, 3}) {
    kernels::set_threads(t);
    for (std::size_t w : {1u, 3u, 5u}) CHECK(kernels::serial::stack_context(frames, w) == kernels::parallel::stack_context(frames, w));

    Matrix a = random_matrix(9, 50, 3), b = a;
    for (std::size_t r = 0; r < 9; ++r) a(r, 7) = b(r, 7) = 0.0;
    CHECK(kernels::serial::normalize_columns(a, 1e-12) == kernels::parallel::normalize_columns(b, 1e-12));
    CHECK(a == b);

    const Matrix m = random_matrix(300, 10, 4), p = random_matrix(300, 77, 5);
    CHECK(kernels::serial::gram(m, p) == kernels::parallel::gram(m, p));

    const Matrix x = random_matrix(600, 90, 6), wts = random_matrix(90, 4, 7, 0.0, 1.0);
    CHECK(kernels::serial::weighted_column_sums(x, wts) == kernels::parallel::weighted_column_sums(x, wts));
  }
}

TEST_CASE("posterior and SVM kernels agree") {
  ThreadGuard g;
  const Matrix dots = random_matrix(5, 200, 8);
  std::vector<double> prior{std::log(0.1), std::log(0.2), std::log(0.3), std::log(0.25), std::log(0.15)};
  std::vector<double> kappa{0.0, 5.0, 50.0, 500.0, 5000.0};
  Matrix g1(200, 5), g2(200, 5);
  std::vector<double> l1(200), l2(200);
  kernels::serial::vmf_posteriors(dots, prior, kappa, g1, l1);
  kernels::set_threads(3);
  kernels::parallel::vmf_posteriors(dots, prior, kappa, g2, l2);
  CHECK(g1 == g2);
  CHECK(l1 == l2);
  for (std::size_t i = 0; i < 200; ++i) {
    double s = 0.0;
    for (std::size_t z = 0; z < 5; ++z) s += g1(i, z);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }

  const Matrix x = random_matrix(10, 60, 9);
  CHECK(kernels::serial::poly_kernel_matrix(x, 0.1, 1.0, 3) == kernels::parallel::poly_kernel_matrix(x, 0.1, 1.0, 3));
  const Matrix sv = random_matrix(10, 12, 10);
  const std::vector<double> coef = {0.5, -1, 0.25, 1, -0.75, 0.1, -0.2, 0.3, 0.9, -0.9, 0.4, -0.4};
  CHECK(kernels::serial::poly_decision_values(sv, coef, 0.3, x, 0.1, 1.0, 3) ==
        kernels::parallel::poly_decision_values(sv, coef, 0.3, x, 0.1, 1.0, 3));
}

TEST_CASE("serial kernels match direct formulas") {
  const Matrix a = random_matrix(6, 4, 11), b = random_matrix(6, 5, 12);
  const Matrix g = kernels::serial::gram(a, b);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(g(i, j) == doctest::Approx(dot(a.col(i), b.col(j))).epsilon(1e-14));
  const Matrix k = kernels::serial::poly_kernel_matrix(a, 0.5, 1.0, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(k(i, j) == doctest::Approx(std::pow(0.5 * dot(a.col(i), a.col(j)) + 1.0, 3)).epsilon(1e-13));
}
