// include/dirseg/svm.hpp

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
#include <span>
#include <vector>

#include "dirseg/ground_truth.hpp"
#include "dirseg/matrix.hpp"

namespace dirseg::svm {

// K(x, y) = (gamma <x, y> + coef0)^degree. gamma <= 0 means 1 / feature_dim.
struct KernelSpec {
  int degree = 3;
  double gamma = 0.0;
  double coef0 = 1.0;
};

// Per-dimension standardization fitted on the training rows.
struct FeatureScaler {
  std::vector<double> mean;
  std::vector<double> stddev;  // zero-variance dimensions get 1

  static FeatureScaler fit(const Matrix &features);
  Matrix apply(const Matrix &features) const;
  std::vector<double> apply(std::span<const double> x) const;
};

struct SvmParams {
  double C = 1.0;
  KernelSpec kernel;
  double tol = 1e-3;
  long max_iter = 0;  // 0 means 10 * N
  std::uint64_t seed = 7;
};

struct SvmModel {
  Matrix support;                 // scaled support vectors, one per column
  std::vector<double> coef;       // alpha_i * y_i
  double bias = 0.0;
  KernelSpec kernel;              // gamma resolved
  FeatureScaler scaler;
  double C = 1.0;
  bool converged = false;
  long iterations = 0;
  // Dual solution over all training points (alpha_i >= 0), kept for audits.
  std::vector<double> alpha;
  std::vector<int> labels;
};

// Soft-margin dual solved by SMO with second-order working-set selection.
// features: one training example per column; labels are +1 / -1.
SvmModel train_svm(const Matrix &features, std::span<const int> labels, const SvmParams &params);

double decision_value(const SvmModel &model, std::span<const double> x);
std::vector<double> decision_values(const SvmModel &model, const Matrix &features);

// Bird iff decision value > 0.
Decisions predict(const SvmModel &model, const Matrix &features);

// Largest KKT violation m(alpha) - M(alpha) of a dual solution (<= tol at convergence).
double kkt_gap(const Matrix &gram, std::span<const int> labels, std::span<const double> alpha,
               double C);

}  // namespace dirseg::svm
