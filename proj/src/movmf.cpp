// src/movmf.cpp

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

#include "dirseg/movmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "dirseg/bessel.hpp"
#include "dirseg/errors.hpp"
#include "dirseg/kernels.hpp"

namespace dirseg::movmf {

namespace {

constexpr double kUnitTol = 1e-6;
constexpr double kDegenerateResultant = 1e-12;

struct MStep {
  VmfMixture mixture;
  std::vector<double> mass;
  std::vector<std::uint8_t> degenerate;
};

MStep m_step_impl(const Matrix &data, const Matrix &gamma, double kappa_max, bool refine,
                  const VmfMixture *previous) {
  const std::size_t n = data.cols(), nz = gamma.cols();
  MStep out;
  out.mixture.dim = static_cast<int>(data.rows());
  out.mixture.components.resize(nz);
  out.mass.assign(nz, 0.0);
  out.degenerate.assign(nz, 0);
  for (std::size_t z = 0; z < nz; ++z)
    for (std::size_t i = 0; i < n; ++i) out.mass[z] += gamma(i, z);

  const Matrix resultant = kernels::parallel::weighted_column_sums(data, gamma);
  for (std::size_t z = 0; z < nz; ++z) {
    VmfComponent &comp = out.mixture.components[z];
    comp.weight = out.mass[z] / static_cast<double>(n);
    auto r = resultant.col(z);
    const double len = norm2(r);
    if (len < kDegenerateResultant) {
      // Any mean maximizes the expected log-likelihood here and kappa = 0.
      out.degenerate[z] = 1;
      comp.kappa = 0.0;
      if (previous) comp.mean = previous->components[z].mean;
      else comp.mean.assign(r.size(), 0.0);
      continue;
    }
    comp.mean.assign(r.begin(), r.end());
    for (double &v : comp.mean) v /= len;
    const double rbar = std::min(1.0, len / out.mass[z]);
    comp.kappa = solve_kappa(rbar, out.mixture.dim, kappa_max, refine);
  }
  return out;
}

void check_unit_columns(const Matrix &data) {
  for (std::size_t i = 0; i < data.cols(); ++i) {
    const double len = norm2(data.col(i));
    if (std::abs(len - 1.0) > kUnitTol)
      throw Error(ErrorCode::NotUnitNorm, fmt::format("column {} has norm {}", i, len));
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Move dead components onto the worst-explained data points.
VmfMixture reseed(const VmfMixture &mixture, const std::vector<std::size_t> &dead,
                  const Matrix &data, const std::vector<double> &point_loglik) {
  VmfMixture out = mixture;
  std::vector<double> alive;
  for (std::size_t z = 0; z < mixture.size(); ++z)
    if (std::find(dead.begin(), dead.end(), z) == dead.end())
      alive.push_back(mixture.components[z].kappa);
  const double kappa = alive.empty() ? 1.0 : median(alive);

  std::vector<std::size_t> order(point_loglik.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return point_loglik[a] < point_loglik[b]; });
  const double floor_weight = 1.0 / static_cast<double>(data.cols());
  for (std::size_t k = 0; k < dead.size() && k < order.size(); ++k) {
    VmfComponent &comp = out.components[dead[k]];
    auto x = data.col(order[k]);
    comp.mean.assign(x.begin(), x.end());
    comp.kappa = kappa;
    comp.weight = std::max(comp.weight, floor_weight);
  }
  double total = 0.0;
  for (const auto &c : out.components) total += c.weight;
  for (auto &c : out.components) c.weight /= total;
  return out;
}

}  // namespace

Matrix VmfMixture::means() const {
  Matrix m(static_cast<std::size_t>(dim), components.size());
  for (std::size_t z = 0; z < components.size(); ++z)
    std::copy(components[z].mean.begin(), components[z].mean.end(), m.col(z).begin());
  return m;
}

void EmConfig::validate() const {
  if (num_components < 1) throw Error(ErrorCode::InvalidArgument, "num_components must be >= 1");
  if (max_iters < 0) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 0");
  if (!(rel_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "rel_tol must be positive");
  if (!(kappa_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa_max must be positive");
  if (!(kappa_init >= 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa_init must be >= 0");
}

double log_surface_area(int dim) {
  if (dim < 2) throw Error(ErrorCode::DimensionTooSmall, fmt::format("dim {} < 2", dim));
  const double half = 0.5 * dim;
  return std::log(2.0) + half * std::log(std::numbers::pi) - std::lgamma(half);
}

double log_norm_const(int dim, double kappa) {
  if (dim < 2) throw Error(ErrorCode::DimensionTooSmall, fmt::format("dim {} < 2", dim));
  if (!(kappa >= 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be >= 0");
  if (kappa == 0.0) return -log_surface_area(dim);
  const double nu = 0.5 * dim - 1.0;
  // nu log kappa - log I_nu(kappa) = nu log 2 - log(I_nu(kappa) / (kappa/2)^nu)
  const double value = nu * std::log(2.0) - 0.5 * dim * std::log(2.0 * std::numbers::pi) -
                       bessel::log_i_scaled(nu, kappa);
  if (!std::isfinite(value))
    throw Error(ErrorCode::NumericalOverflow, fmt::format("log C_{}({}) is not finite", dim, kappa));
  return value;
}

double mean_resultant_length(int dim, double kappa) {
  if (dim < 2) throw Error(ErrorCode::DimensionTooSmall, fmt::format("dim {} < 2", dim));
  return bessel::ratio(0.5 * dim - 1.0, kappa);
}

double approx_kappa(double rbar, int dim) {
  return rbar * (dim - rbar * rbar) / (1.0 - rbar * rbar);
}

double solve_kappa(double rbar, int dim, double kappa_max, bool refine) {
  if (!(rbar > 0.0)) return 0.0;
  if (rbar >= 1.0) return kappa_max;
  double kappa = std::clamp(approx_kappa(rbar, dim), 0.0, kappa_max);
  if (!refine) return kappa;
  if (mean_resultant_length(dim, kappa_max) <= rbar) return kappa_max;

  // A is increasing in kappa; Newton with a bisection fallback inside [lo, hi].
  double lo = 0.0, hi = kappa_max;
  if (kappa <= 0.0) kappa = 0.5 * hi;
  for (int it = 0; it < 60; ++it) {
    const double a = mean_resultant_length(dim, kappa);
    const double f = a - rbar;
    if (f > 0.0) hi = kappa;
    else lo = kappa;
    const double slope = 1.0 - a * a - (dim - 1.0) / kappa * a;
    double next = slope > 0.0 ? kappa - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - kappa);
    kappa = next;
    if (step <= 1e-13 * kappa) break;
  }
  return kappa;
}

double log_density(std::span<const double> x, const VmfComponent &comp) {
  if (x.size() != comp.mean.size())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("point has dim {}, component {}", x.size(), comp.mean.size()));
  const double len = norm2(x);
  if (std::abs(len - 1.0) > kUnitTol)
    throw Error(ErrorCode::NotUnitNorm, fmt::format("point has norm {}", len));
  return log_norm_const(static_cast<int>(x.size()), comp.kappa) + comp.kappa * dot(comp.mean, x);
}

EStep e_step(const Matrix &data, const VmfMixture &mixture) {
  if (data.rows() != static_cast<std::size_t>(mixture.dim))
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("data dim {} vs mixture dim {}", data.rows(), mixture.dim));
  const std::size_t nz = mixture.size(), n = data.cols();
  std::vector<double> log_prior(nz), kappa(nz);
  for (std::size_t z = 0; z < nz; ++z) {
    const auto &c = mixture.components[z];
    kappa[z] = c.kappa;
    log_prior[z] = std::log(c.weight) + log_norm_const(mixture.dim, c.kappa);
  }
  const Matrix dots = kernels::parallel::gram(mixture.means(), data);
  EStep out;
  out.resp.gamma = Matrix(n, nz);
  out.point_loglik.assign(n, 0.0);
  kernels::parallel::vmf_posteriors(dots, log_prior, kappa, out.resp.gamma, out.point_loglik);
  for (double v : out.point_loglik) out.log_likelihood += v;
  return out;
}

VmfMixture m_step(const Matrix &data, const Responsibilities &resp, double kappa_max,
                  bool refine_kappa) {
  if (resp.gamma.rows() != data.cols())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{} responsibility rows for {} points", resp.gamma.rows(), data.cols()));
  MStep step = m_step_impl(data, resp.gamma, kappa_max, refine_kappa, nullptr);
  for (std::size_t z = 0; z < step.degenerate.size(); ++z)
    if (step.degenerate[z])
      throw Error(ErrorCode::DegenerateComponent,
                  fmt::format("component {} has a vanishing resultant", z));
  return std::move(step.mixture);
}

Matrix kmeanspp_seeds(const Matrix &data, int count, std::uint64_t seed) {
  const std::size_t n = data.cols();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix seeds(data.rows(), static_cast<std::size_t>(count));
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::size_t pick = static_cast<std::size_t>(unit(rng) * static_cast<double>(n)) % n;
  for (int c = 0; c < count; ++c) {
    auto src = data.col(pick);
    std::copy(src.begin(), src.end(), seeds.col(static_cast<std::size_t>(c)).begin());
    if (c + 1 == count) break;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i], std::max(0.0, 1.0 - dot(src, data.col(i))));
      total += dist[i];
    }
    if (!(total > 0.0)) {
      pick = static_cast<std::size_t>(unit(rng) * static_cast<double>(n)) % n;
      continue;
    }
    const double target = unit(rng) * total;
    double acc = 0.0;
    pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      acc += dist[i];
      if (acc > target && dist[i] > 0.0) {
        pick = i;
        break;
      }
    }
  }
  return seeds;
}

FitResult fit(const Matrix &data, const EmConfig &config) {
  config.validate();
  if (data.cols() < static_cast<std::size_t>(config.num_components))
    throw Error(ErrorCode::TooFewPoints,
                fmt::format("{} points for {} components", data.cols(), config.num_components));
  return fit(data, config, kmeanspp_seeds(data, config.num_components, config.seed));
}

FitResult fit(const Matrix &data, const EmConfig &config, const Matrix &initial_means) {
  config.validate();
  const std::size_t n = data.cols();
  const auto nz = static_cast<std::size_t>(config.num_components);
  if (n < nz)
    throw Error(ErrorCode::TooFewPoints, fmt::format("{} points for {} components", n, nz));
  if (initial_means.rows() != data.rows() || initial_means.cols() != nz)
    throw Error(ErrorCode::DimensionMismatch, "initial means do not match data / num_components");
  if (data.rows() < 2) throw Error(ErrorCode::DimensionTooSmall, "data dimension < 2");
  check_unit_columns(data);

  FitResult result;
  VmfMixture &mix = result.mixture;
  mix.dim = static_cast<int>(data.rows());
  mix.components.resize(nz);
  for (std::size_t z = 0; z < nz; ++z) {
    auto m = initial_means.col(z);
    mix.components[z].mean.assign(m.begin(), m.end());
    const double len = norm2(m);
    for (double &v : mix.components[z].mean) v /= len;
    mix.components[z].kappa = config.kappa_init;
    mix.components[z].weight = 1.0 / static_cast<double>(nz);
  }

  EStep current = e_step(data, mix);
  result.loglik_trace.push_back(current.log_likelihood);
  for (int iter = 0; iter < config.max_iters; ++iter) {
    MStep step = m_step_impl(data, current.resp.gamma, config.kappa_max, config.refine_kappa, &mix);
    std::vector<std::size_t> dead;
    for (std::size_t z = 0; z < nz; ++z)
      if (step.degenerate[z] || step.mass[z] < config.min_resp_mass) dead.push_back(z);
    if (std::all_of(step.degenerate.begin(), step.degenerate.end(), [](auto d) { return d != 0; }))
      throw Error(ErrorCode::AllDegenerate, "every component lost its resultant");

    EStep next = e_step(data, step.mixture);
    if (!dead.empty()) {
      // Re-seeding is accepted only when it does not lower the likelihood.
      VmfMixture moved = reseed(step.mixture, dead, data, current.point_loglik);
      EStep alt = e_step(data, moved);
      if (alt.log_likelihood >= next.log_likelihood) {
        step.mixture = std::move(moved);
        next = std::move(alt);
        ++result.reseeds;
      }
    }
    const double previous = current.log_likelihood;
    mix = std::move(step.mixture);
    current = std::move(next);
    result.loglik_trace.push_back(current.log_likelihood);
    result.iterations = iter + 1;
    if (current.log_likelihood - previous <= config.rel_tol * std::abs(previous)) {
      result.converged = true;
      break;
    }
  }
  return result;
}

Matrix sample_vmf(const VmfComponent &comp, int n, std::uint64_t seed) {
  const std::size_t p = comp.mean.size();
  if (p < 2) throw Error(ErrorCode::DimensionTooSmall, "vMF sampling needs dim >= 2");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double pm1 = static_cast<double>(p) - 1.0;
  std::gamma_distribution<double> shape(0.5 * pm1, 1.0);
  const double kappa = comp.kappa;
  const double b = pm1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + pm1 * pm1));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + pm1 * std::log(1.0 - x0 * x0);

  Matrix out(p, static_cast<std::size_t>(n));
  std::vector<double> v(p);
  for (std::size_t s = 0; s < static_cast<std::size_t>(n); ++s) {
    double w = 0.0;
    for (;;) {
      const double g1 = shape(rng), g2 = shape(rng);
      const double z = g1 / (g1 + g2);
      w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
      const double u = unit(rng);
      if (kappa * w + pm1 * std::log(1.0 - x0 * w) - c >= std::log(u)) break;
    }
    // Uniform direction in the tangent space of the mean.
    double proj = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      v[i] = normal(rng);
      proj += v[i] * comp.mean[i];
    }
    for (std::size_t i = 0; i < p; ++i) v[i] -= proj * comp.mean[i];
    const double vlen = norm2(v);
    const double tangent = std::sqrt(std::max(0.0, 1.0 - w * w));
    auto col = out.col(s);
    for (std::size_t i = 0; i < p; ++i) col[i] = w * comp.mean[i] + tangent * v[i] / vlen;
    const double len = norm2(col);
    for (double &x : col) x /= len;
  }
  return out;
}

DirectionDictionary build_dictionary(const VmfMixture &mixture, int keep,
                                     DictionaryProvenance provenance) {
  const int total = static_cast<int>(mixture.size());
  if (keep < 1 || keep > total)
    throw Error(ErrorCode::KeepOutOfRange, fmt::format("keep {} outside [1, {}]", keep, total));
  std::vector<std::size_t> order(mixture.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mixture.components[a].kappa > mixture.components[b].kappa;
  });
  DirectionDictionary dict;
  dict.atoms = Matrix(static_cast<std::size_t>(mixture.dim), static_cast<std::size_t>(keep));
  for (int j = 0; j < keep; ++j) {
    const auto &c = mixture.components[order[static_cast<std::size_t>(j)]];
    std::copy(c.mean.begin(), c.mean.end(), dict.atoms.col(static_cast<std::size_t>(j)).begin());
    dict.kappas.push_back(c.kappa);
    dict.weights.push_back(c.weight);
  }
  dict.provenance = std::move(provenance);
  return dict;
}

}  // namespace dirseg::movmf
