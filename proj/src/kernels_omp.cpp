// src/kernels_omp.cpp

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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "dirseg/kernels.hpp"
#include "fft.hpp"
#include "kernel_common.hpp"

namespace dirseg::kernels {

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

namespace parallel {

namespace {
long as_long(std::size_t n) { return static_cast<long>(n); }
}  // namespace

void stft_magnitudes(std::span<const double> samples, std::span<const double> window,
                     std::size_t hop, std::size_t fft_size, Matrix &out) {
  const std::size_t frame_len = window.size();
  const detail::RealFft fft(fft_size);
#pragma omp parallel
  {
    detail::RealFft::Workspace ws(fft_size);
#pragma omp for schedule(static)
    for (long k = 0; k < as_long(out.cols()); ++k) {
      auto in = ws.input();
      std::fill(in.begin(), in.end(), 0.0);
      const std::size_t start = static_cast<std::size_t>(k) * hop;
      for (std::size_t t = 0; t < frame_len; ++t) in[t] = samples[start + t] * window[t];
      fft.execute(ws);
      auto col = out.col(static_cast<std::size_t>(k));
      for (std::size_t b = 0; b < col.size(); ++b) col[b] = ws.magnitude(b);
    }
  }
}

Matrix stack_context(const Matrix &frames, std::size_t w) {
  const std::size_t d = frames.rows(), n = frames.cols(), half = (w - 1) / 2;
  Matrix out(w * d, n);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < as_long(n); ++k) {
    auto dst = out.col(static_cast<std::size_t>(k));
    for (std::size_t o = 0; o < w; ++o) {
      auto src = frames.col(detail::context_source(static_cast<std::size_t>(k), o, half, n));
      std::copy(src.begin(), src.end(), dst.begin() + o * d);
    }
  }
  return out;
}

std::vector<std::uint8_t> normalize_columns(Matrix &m, double eps) {
  std::vector<std::uint8_t> flags(m.cols(), 0);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < as_long(m.cols()); ++c) {
    auto col = m.col(static_cast<std::size_t>(c));
    const double norm = norm2(col);
    if (norm > eps) {
      for (double &v : col) v /= norm;
      flags[c] = 1;
    } else {
      std::fill(col.begin(), col.end(), 0.0);
    }
  }
  return flags;
}

Matrix gram(const Matrix &a, const Matrix &b) {
  Matrix out(a.cols(), b.cols());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < as_long(b.cols()); ++j) {
    auto bj = b.col(static_cast<std::size_t>(j));
    for (std::size_t i = 0; i < a.cols(); ++i) out(i, static_cast<std::size_t>(j)) = dot(a.col(i), bj);
  }
  return out;
}

Matrix weighted_column_sums(const Matrix &x, const Matrix &weights) {
  Matrix out(x.rows(), weights.cols());
  // Split each output column into row blocks so small Z still spreads over
  // threads; every block accumulates over i in ascending order.
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (x.rows() + kBlock - 1) / kBlock;
  const long tasks = as_long(blocks * weights.cols());
#pragma omp parallel for schedule(static)
  for (long t = 0; t < tasks; ++t) {
    const std::size_t z = static_cast<std::size_t>(t) / blocks;
    const std::size_t r0 = (static_cast<std::size_t>(t) % blocks) * kBlock;
    const std::size_t r1 = std::min(r0 + kBlock, x.rows());
    auto acc = out.col(z);
    for (std::size_t i = 0; i < x.cols(); ++i) {
      const double g = weights(i, z);
      if (g == 0.0) continue;
      auto xi = x.col(i);
      for (std::size_t r = r0; r < r1; ++r) acc[r] += g * xi[r];
    }
  }
  return out;
}

void vmf_posteriors(const Matrix &dots, std::span<const double> log_prior,
                    std::span<const double> kappa, Matrix &gamma,
                    std::span<double> point_loglik) {
  const std::size_t nz = dots.rows();
#pragma omp parallel
  {
    std::vector<double> lp(nz);
#pragma omp for schedule(static)
    for (long il = 0; il < as_long(dots.cols()); ++il) {
      const auto i = static_cast<std::size_t>(il);
      double mx = -std::numeric_limits<double>::infinity();
      for (std::size_t z = 0; z < nz; ++z) {
        lp[z] = log_prior[z] + kappa[z] * dots(z, i);
        mx = std::max(mx, lp[z]);
      }
      double s = 0.0;
      for (std::size_t z = 0; z < nz; ++z) {
        lp[z] = std::exp(lp[z] - mx);
        s += lp[z];
      }
      for (std::size_t z = 0; z < nz; ++z) gamma(i, z) = lp[z] / s;
      point_loglik[i] = mx + std::log(s);
    }
  }
}

Matrix poly_kernel_matrix(const Matrix &x, double gamma, double coef0, int degree) {
  const std::size_t n = x.cols();
  Matrix out(n, n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long jl = 0; jl < as_long(n); ++jl) {
    const auto j = static_cast<std::size_t>(jl);
    for (std::size_t i = 0; i <= j; ++i) {
      const double v = detail::ipow(gamma * dot(x.col(i), x.col(j)) + coef0, degree);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

std::vector<double> poly_decision_values(const Matrix &support,
                                         std::span<const double> coef, double bias,
                                         const Matrix &x, double gamma, double coef0,
                                         int degree) {
  std::vector<double> out(x.cols());
#pragma omp parallel for schedule(static)
  for (long jl = 0; jl < as_long(x.cols()); ++jl) {
    const auto j = static_cast<std::size_t>(jl);
    double f = 0.0;
    for (std::size_t i = 0; i < support.cols(); ++i)
      f += coef[i] * detail::ipow(gamma * dot(support.col(i), x.col(j)) + coef0, degree);
    out[j] = f + bias;
  }
  return out;
}

}  // namespace parallel
}  // namespace dirseg::kernels
