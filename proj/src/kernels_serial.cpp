// src/kernels_serial.cpp

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

#include <algorithm>
#include <cmath>
#include <limits>

#include "dirseg/kernels.hpp"
#include "fft.hpp"
#include "kernel_common.hpp"

namespace dirseg::kernels::serial {

void stft_magnitudes(std::span<const double> samples, std::span<const double> window,
                     std::size_t hop, std::size_t fft_size, Matrix &out) {
  const std::size_t frame_len = window.size();
  detail::RealFft fft(fft_size);
  detail::RealFft::Workspace ws(fft_size);
  for (std::size_t k = 0; k < out.cols(); ++k) {
    auto in = ws.input();
    std::fill(in.begin(), in.end(), 0.0);
    const std::size_t start = k * hop;
    for (std::size_t t = 0; t < frame_len; ++t) in[t] = samples[start + t] * window[t];
    fft.execute(ws);
    auto col = out.col(k);
    for (std::size_t b = 0; b < col.size(); ++b) col[b] = ws.magnitude(b);
  }
}

Matrix stack_context(const Matrix &frames, std::size_t w) {
  const std::size_t d = frames.rows(), n = frames.cols(), half = (w - 1) / 2;
  Matrix out(w * d, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t o = 0; o < w; ++o) {
      auto src = frames.col(detail::context_source(k, o, half, n));
      std::copy(src.begin(), src.end(), out.col(k).begin() + o * d);
    }
  }
  return out;
}

std::vector<std::uint8_t> normalize_columns(Matrix &m, double eps) {
  std::vector<std::uint8_t> flags(m.cols(), 0);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto col = m.col(c);
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
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) out(i, j) = dot(a.col(i), b.col(j));
  return out;
}

Matrix weighted_column_sums(const Matrix &x, const Matrix &weights) {
  Matrix out(x.rows(), weights.cols());
  for (std::size_t z = 0; z < weights.cols(); ++z) {
    auto acc = out.col(z);
    for (std::size_t i = 0; i < x.cols(); ++i) {
      const double g = weights(i, z);
      if (g == 0.0) continue;
      auto xi = x.col(i);
      for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += g * xi[r];
    }
  }
  return out;
}

void vmf_posteriors(const Matrix &dots, std::span<const double> log_prior,
                    std::span<const double> kappa, Matrix &gamma,
                    std::span<double> point_loglik) {
  const std::size_t nz = dots.rows();
  std::vector<double> lp(nz);
  for (std::size_t i = 0; i < dots.cols(); ++i) {
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

Matrix poly_kernel_matrix(const Matrix &x, double gamma, double coef0, int degree) {
  const std::size_t n = x.cols();
  Matrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
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
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double f = 0.0;
    for (std::size_t i = 0; i < support.cols(); ++i)
      f += coef[i] * detail::ipow(gamma * dot(support.col(i), x.col(j)) + coef0, degree);
    out[j] = f + bias;
  }
  return out;
}

}  // namespace dirseg::kernels::serial
