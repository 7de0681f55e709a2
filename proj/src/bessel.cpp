// src/bessel.cpp

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

#include "dirseg/bessel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "dirseg/errors.hpp"

namespace dirseg::bessel {

namespace {

constexpr int kDebyeTerms = 14;

using Poly = std::vector<double>;  // coefficient of p^i at index i

double eval(const Poly &poly, double p) {
  double r = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) r = r * p + *it;
  return r;
}

// Debye polynomials u_k(p) from
//   u_{k+1}(p) = p^2 (1 - p^2) u_k'(p) / 2 + (1/8) int_0^p (1 - 5 t^2) u_k(t) dt.
std::vector<Poly> make_debye_polys() {
  std::vector<Poly> u{{1.0}};
  for (int k = 0; k + 1 < kDebyeTerms; ++k) {
    const Poly &uk = u.back();
    Poly next(uk.size() + 3, 0.0);
    for (std::size_t i = 1; i < uk.size(); ++i) {
      const double d = static_cast<double>(i) * uk[i];  // coefficient of p^(i-1) in u_k'
      next[i + 1] += 0.5 * d;
      next[i + 3] -= 0.5 * d;
    }
    for (std::size_t i = 0; i < uk.size(); ++i) {
      next[i + 1] += 0.125 * uk[i] / static_cast<double>(i + 1);
      next[i + 3] -= 0.625 * uk[i] / static_cast<double>(i + 3);
    }
    u.push_back(std::move(next));
  }
  return u;
}

const std::vector<Poly> &debye_polys() {
  static const std::vector<Poly> polys = make_debye_polys();
  return polys;
}

// Ascending series sum_k (x^2/4)^k / (k! (nu+1)_k), returned as a log.
double log_series_sum(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (static_cast<double>(k) * (nu + k));
    sum += term;
    if (term < 1e-17 * sum && q < static_cast<double>(k) * (nu + k)) break;
  }
  return std::log(sum);
}

double log_i_debye(double nu, double x) {
  const double z = x / nu;
  const double s = std::sqrt(1.0 + z * z);
  const double p = 1.0 / s;
  const double eta = s + std::log(z / (1.0 + s));
  const auto &u = debye_polys();
  double sum = 1.0, scale = 1.0;
  for (std::size_t k = 1; k < u.size(); ++k) {
    scale /= nu;
    const double term = eval(u[k], p) * scale;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return nu * eta - 0.5 * std::log(2.0 * std::numbers::pi * nu) - 0.5 * std::log(s) +
         std::log(sum);
}

struct Eval {
  double log_i;
  double ratio;  // I_{nu+1} / I_nu
};

Eval asymptotic(double nu, double x) {
  if (nu >= kDebyeMinOrder) {
    const double lo = log_i_debye(nu, x);
    return {lo, std::exp(log_i_debye(nu + 1.0, x) - lo)};
  }
  const double steps = std::ceil(kDebyeMinOrder - nu);
  const double top = nu + steps;
  const double log_top = log_i_debye(top, x);
  double r = std::exp(log_i_debye(top + 1.0, x) - log_top);  // R_top
  double log_sum = 0.0;
  for (double k = top - 1.0; k >= nu - 1e-9; k -= 1.0) {
    r = 1.0 / (2.0 * (k + 1.0) / x + r);  // R_k
    log_sum += std::log(r);
  }
  return {log_top - log_sum, r};
}

void check_args(double nu, double x) {
  if (!(nu >= 0.0) || !(x >= 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::InvalidArgument, "Bessel I needs nu >= 0 and finite x >= 0");
}

}  // namespace

double series_crossover(double nu) { return 2.0 * std::sqrt(nu + 1.0); }

double log_i_series(double nu, double x) {
  check_args(nu, x);
  if (x == 0.0) return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + log_series_sum(nu, x);
}

double log_i_asymptotic(double nu, double x) {
  check_args(nu, x);
  if (x == 0.0) return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return asymptotic(nu, x).log_i;
}

double log_i(double nu, double x) {
  check_args(nu, x);
  if (x <= series_crossover(nu)) return log_i_series(nu, x);
  return asymptotic(nu, x).log_i;
}

double log_i_scaled(double nu, double x) {
  check_args(nu, x);
  if (x <= series_crossover(nu)) return -std::lgamma(nu + 1.0) + log_series_sum(nu, x);
  return asymptotic(nu, x).log_i - nu * std::log(0.5 * x);
}

double ratio(double nu, double x) {
  check_args(nu, x);
  if (x == 0.0) return 0.0;
  if (x <= series_crossover(nu)) {
    // x/(2(nu+1)) * S(nu+1)/S(nu) keeps full relative accuracy for tiny x.
    return x / (2.0 * (nu + 1.0)) * std::exp(log_series_sum(nu + 1.0, x) - log_series_sum(nu, x));
  }
  return asymptotic(nu, x).ratio;
}

}  // namespace dirseg::bessel
