// include/dirseg/movmf.hpp

// Copyright 2026  The dirseg authors

// See ../../COPYING for clarification regarding multiple authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirseg/matrix.hpp"
#include "dirseg/spectral.hpp"

namespace dirseg::movmf {

struct VmfComponent {
  std::vector<double> mean;  // unit norm
  double kappa = 0.0;
  double weight = 1.0;
};

struct VmfMixture {
  std::vector<VmfComponent> components;
  int dim = 0;

  std::size_t size() const { return components.size(); }
  Matrix means() const;  // dim x Z
};

struct EmConfig {
  int num_components = 15;
  int max_iters = 100;
  double rel_tol = 1e-6;
  std::uint64_t seed = 20190601;
  double kappa_max = 1e5;
  double kappa_init = 1.0;
  double min_resp_mass = 1.0;
  // Newton-polish the closed-form concentration estimate to the exact
  // maximizer of the expected log-likelihood.
  bool refine_kappa = true;

  void validate() const;
};

// gamma(i, z): posterior of component z for data column i. Rows sum to 1.
struct Responsibilities {
  Matrix gamma;
};

// log area of S^(dim-1): log 2 + (dim/2) log pi - lgamma(dim/2).
double log_surface_area(int dim);

// log C_dim(kappa) = (dim/2 - 1) log kappa - (dim/2) log(2 pi) - log I_{dim/2-1}(kappa).
// kappa = 0 gives the uniform density, -log_surface_area(dim).
double log_norm_const(int dim, double kappa);

// A_dim(kappa) = I_{dim/2}(kappa) / I_{dim/2-1}(kappa), the expected cosine
// between a sample and the mean direction.
double mean_resultant_length(int dim, double kappa);

// Closed-form approximation rbar (dim - rbar^2) / (1 - rbar^2).
double approx_kappa(double rbar, int dim);

// Solve A_dim(kappa) = rbar, clamped to [0, kappa_max].
double solve_kappa(double rbar, int dim, double kappa_max, bool refine = true);

double log_density(std::span<const double> x, const VmfComponent &comp);

struct EStep {
  Responsibilities resp;
  double log_likelihood = 0.0;
  std::vector<double> point_loglik;
};

EStep e_step(const Matrix &data, const VmfMixture &mixture);

// Throws DegenerateComponent if a component's weighted resultant vanishes.
VmfMixture m_step(const Matrix &data, const Responsibilities &resp, double kappa_max,
                  bool refine_kappa = true);

struct FitResult {
  VmfMixture mixture;
  std::vector<double> loglik_trace;
  int iterations = 0;
  bool converged = false;
  int reseeds = 0;
};

// EM with soft assignments. Columns of `data` must be unit norm.
FitResult fit(const Matrix &data, const EmConfig &config);
// Same, starting from the given means (dim x Z) instead of k-means++ seeding.
FitResult fit(const Matrix &data, const EmConfig &config, const Matrix &initial_means);

// Spherical k-means++ seeding on cosine distance. Returns dim x count.
Matrix kmeanspp_seeds(const Matrix &data, int count, std::uint64_t seed);

// Wood's rejection sampler. Returns dim x n unit columns.
Matrix sample_vmf(const VmfComponent &comp, int n, std::uint64_t seed);

struct DictionaryProvenance {
  StftParams stft;
  int w = 5;
  int d = 513;
  int sample_rate = 44100;
  int num_components = 15;
  std::uint64_t seed = 0;
  std::size_t training_frames = 0;
  std::vector<std::string> training_files;
};

// Columns of `atoms` are the retained mean directions, sorted by decreasing kappa.
struct DirectionDictionary {
  static constexpr int kFormatVersion = 1;

  Matrix atoms;  // wd x Z_kept
  std::vector<double> kappas;
  std::vector<double> weights;
  DictionaryProvenance provenance;
  int format_version = kFormatVersion;

  std::size_t dim() const { return atoms.rows(); }
  std::size_t size() const { return atoms.cols(); }
};

// Keep the `keep` most concentrated components; equal kappas keep the lower index.
DirectionDictionary build_dictionary(const VmfMixture &mixture, int keep,
                                     DictionaryProvenance provenance);

}  // namespace dirseg::movmf
