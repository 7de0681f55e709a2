// src/svm.cpp

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

#include "dirseg/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "dirseg/errors.hpp"
#include "dirseg/kernels.hpp"

namespace dirseg::svm {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct DualSolution {
  std::vector<double> alpha;
  double rho = 0.0;
  long iterations = 0;
  bool converged = false;
};

// I_up / I_low membership of the standard SMO formulation.
bool in_up(int y, double a, double C) { return y > 0 ? a < C : a > 0.0; }
bool in_low(int y, double a, double C) { return y > 0 ? a > 0.0 : a < C; }

std::vector<double> gradient(const Matrix &gram, std::span<const int> y,
                             std::span<const double> alpha) {
  const std::size_t n = y.size();
  std::vector<double> g(n, -1.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (alpha[j] == 0.0) continue;
    for (std::size_t t = 0; t < n; ++t) g[t] += y[t] * y[j] * gram(t, j) * alpha[j];
  }
  return g;
}

// min 1/2 a'Qa - e'a  s.t.  0 <= a <= C, y'a = 0, with Q_ij = y_i y_j K_ij.
DualSolution solve_dual(const Matrix &K, std::span<const int> y, double C, double tol,
                        long max_iter, std::uint64_t seed) {
  const std::size_t n = y.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  DualSolution sol;
  std::vector<double> &a = sol.alpha;
  a.assign(n, 0.0);
  std::vector<double> G(n, -1.0);
  auto Q = [&](std::size_t i, std::size_t j) { return y[i] * y[j] * K(i, j); };

  for (; sol.iterations < max_iter; ++sol.iterations) {
    // Maximal violating i, then j by second-order gain.
    double gmax = -kInf;
    std::size_t i = n;
    for (std::size_t t : order) {
      if (!in_up(y[t], a[t], C)) continue;
      const double v = -y[t] * G[t];
      if (v > gmax) {
        gmax = v;
        i = t;
      }
    }
    double gmax2 = -kInf, best = kInf;
    std::size_t j = n;
    for (std::size_t t : order) {
      if (!in_low(y[t], a[t], C)) continue;
      const double v = y[t] * G[t];
      gmax2 = std::max(gmax2, v);
      if (i == n) continue;
      const double grad_diff = gmax + v;
      if (grad_diff <= 0.0) continue;
      double quad = K(i, i) + K(t, t) - 2.0 * K(i, t);
      if (quad <= 0.0) quad = kTau;
      const double gain = -(grad_diff * grad_diff) / quad;
      if (gain < best) {
        best = gain;
        j = t;
      }
    }
    if (gmax + gmax2 < tol || i == n || j == n) {
      sol.converged = true;
      break;
    }

    const double ai = a[i], aj = a[j];
    if (y[i] != y[j]) {
      double quad = K(i, i) + K(j, j) + 2.0 * Q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-G[i] - G[j]) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0.0) {
        if (a[j] < 0.0) { a[j] = 0.0; a[i] = diff; }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = -diff;
      }
      if (diff > 0.0) {
        if (a[i] > C) { a[i] = C; a[j] = C - diff; }
      } else if (a[j] > C) {
        a[j] = C;
        a[i] = C + diff;
      }
    } else {
      double quad = K(i, i) + K(j, j) - 2.0 * Q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (G[i] - G[j]) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > C) {
        if (a[i] > C) { a[i] = C; a[j] = sum - C; }
      } else if (a[j] < 0.0) {
        a[j] = 0.0;
        a[i] = sum;
      }
      if (sum > C) {
        if (a[j] > C) { a[j] = C; a[i] = sum - C; }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = sum;
      }
    }
    const double dai = a[i] - ai, daj = a[j] - aj;
    for (std::size_t t = 0; t < n; ++t) G[t] += Q(t, i) * dai + Q(t, j) * daj;
  }

  // rho from free vectors, else the midpoint of the feasible interval.
  double ub = kInf, lb = -kInf, sum_free = 0.0;
  int n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * G[t];
    if (a[t] >= C) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (a[t] <= 0.0) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  sol.rho = n_free > 0 ? sum_free / n_free : 0.5 * (ub + lb);
  return sol;
}

}  // namespace

FeatureScaler FeatureScaler::fit(const Matrix &features) {
  const std::size_t dim = features.rows(), n = features.cols();
  FeatureScaler s;
  s.mean.assign(dim, 0.0);
  s.stddev.assign(dim, 1.0);
  if (n == 0) return s;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < dim; ++r) s.mean[r] += features(r, c);
  for (double &m : s.mean) m /= static_cast<double>(n);
  std::vector<double> var(dim, 0.0);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < dim; ++r) {
      const double d = features(r, c) - s.mean[r];
      var[r] += d * d;
    }
  for (std::size_t r = 0; r < dim; ++r) {
    const double sd = std::sqrt(var[r] / static_cast<double>(n));
    s.stddev[r] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

Matrix FeatureScaler::apply(const Matrix &features) const {
  if (features.rows() != mean.size())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("feature dim {} vs scaler dim {}", features.rows(), mean.size()));
  Matrix out = features;
  for (std::size_t c = 0; c < out.cols(); ++c)
    for (std::size_t r = 0; r < out.rows(); ++r) out(r, c) = (out(r, c) - mean[r]) / stddev[r];
  return out;
}

std::vector<double> FeatureScaler::apply(std::span<const double> x) const {
  if (x.size() != mean.size())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("feature dim {} vs scaler dim {}", x.size(), mean.size()));
  std::vector<double> out(x.size());
  for (std::size_t r = 0; r < x.size(); ++r) out[r] = (x[r] - mean[r]) / stddev[r];
  return out;
}

SvmModel train_svm(const Matrix &features, std::span<const int> labels, const SvmParams &params) {
  const std::size_t n = features.cols();
  if (labels.size() != n)
    throw Error(ErrorCode::DimensionMismatch, fmt::format("{} labels for {} examples", labels.size(), n));
  if (!(params.C > 0.0)) throw Error(ErrorCode::InvalidArgument, "C must be positive");
  if (params.kernel.degree < 1) throw Error(ErrorCode::InvalidArgument, "kernel degree must be >= 1");
  if (features.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "zero-dimensional features");
  bool pos = false, neg = false;
  for (int y : labels) {
    if (y == 1) pos = true;
    else if (y == -1) neg = true;
    else throw Error(ErrorCode::InvalidArgument, fmt::format("label {} is not +1/-1", y));
  }
  if (!pos || !neg) throw Error(ErrorCode::SingleClassInput, "training labels contain one class only");

  SvmModel model;
  model.C = params.C;
  model.kernel = params.kernel;
  if (!(model.kernel.gamma > 0.0)) model.kernel.gamma = 1.0 / static_cast<double>(features.rows());
  model.scaler = FeatureScaler::fit(features);
  const Matrix x = model.scaler.apply(features);
  const Matrix K = kernels::parallel::poly_kernel_matrix(x, model.kernel.gamma, model.kernel.coef0,
                                                         model.kernel.degree);
  const long max_iter = params.max_iter > 0 ? params.max_iter : 10 * static_cast<long>(n);
  DualSolution sol = solve_dual(K, labels, params.C, params.tol, max_iter, params.seed);

  std::vector<std::size_t> sv;
  for (std::size_t i = 0; i < n; ++i)
    if (sol.alpha[i] > 0.0) sv.push_back(i);
  model.support = x.select_cols(sv);
  for (std::size_t i : sv) model.coef.push_back(sol.alpha[i] * labels[i]);
  model.bias = -sol.rho;
  model.converged = sol.converged;
  model.iterations = sol.iterations;
  model.alpha = std::move(sol.alpha);
  model.labels.assign(labels.begin(), labels.end());
  return model;
}

double decision_value(const SvmModel &model, std::span<const double> x) {
  const std::vector<double> xs = model.scaler.apply(x);
  double f = model.bias;
  for (std::size_t i = 0; i < model.coef.size(); ++i) {
    double k = model.kernel.gamma * dot(model.support.col(i), xs) + model.kernel.coef0;
    double p = 1.0;
    for (int d = 0; d < model.kernel.degree; ++d) p *= k;
    f += model.coef[i] * p;
  }
  return f;
}

std::vector<double> decision_values(const SvmModel &model, const Matrix &features) {
  if (features.cols() == 0) return {};
  const Matrix xs = model.scaler.apply(features);
  return kernels::parallel::poly_decision_values(model.support, model.coef, model.bias, xs,
                                                 model.kernel.gamma, model.kernel.coef0,
                                                 model.kernel.degree);
}

Decisions predict(const SvmModel &model, const Matrix &features) {
  const auto f = decision_values(model, features);
  Decisions out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k] > 0.0 ? Label::Bird : Label::Background;
  return out;
}

double kkt_gap(const Matrix &gram, std::span<const int> labels, std::span<const double> alpha,
               double C) {
  const auto g = gradient(gram, labels, alpha);
  double m = -kInf, M = kInf;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    const double v = -labels[t] * g[t];
    if (in_up(labels[t], alpha[t], C)) m = std::max(m, v);
    if (in_low(labels[t], alpha[t], C)) M = std::min(M, v);
  }
  return m - M;
}

}  // namespace dirseg::svm
