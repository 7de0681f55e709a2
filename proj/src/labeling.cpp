// src/labeling.cpp

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

#include "dirseg/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "dirseg/errors.hpp"

namespace dirseg {

namespace {

int quantize(double v, int bins) {
  const int b = static_cast<int>(std::floor(v * bins));
  return std::clamp(b, 0, bins - 1);
}

double entropy_unchecked(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

}  // namespace

double entropy(std::span<const double> p) {
  double total = 0.0;
  for (double v : p) {
    if (v < 0.0 || !std::isfinite(v))
      throw Error(ErrorCode::NotADistribution, fmt::format("entry {} is not a probability", v));
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw Error(ErrorCode::NotADistribution, fmt::format("entries sum to {}", total));
  return entropy_unchecked(p);
}

double joint_entropy(std::span<const double> a, std::span<const double> b, int bins) {
  if (a.size() != b.size())
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} vs {} coordinates", a.size(), b.size()));
  if (bins < 2) throw Error(ErrorCode::InvalidArgument, "joint entropy needs at least 2 bins");
  if (a.empty()) return 0.0;
  std::vector<int> cells(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) cells[j] = quantize(a[j], bins) * bins + quantize(b[j], bins);
  std::sort(cells.begin(), cells.end());
  const double n = static_cast<double>(a.size());
  double h = 0.0;
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    while (j < cells.size() && cells[j] == cells[i]) ++j;
    const double p = static_cast<double>(j - i) / n;
    h -= p * std::log2(p);
    i = j;
  }
  return h;
}

MiCurve mi_curve(const NormalizedDE &nde, int bins) {
  const std::size_t k = nde.probs.cols();
  if (k < 2) throw Error(ErrorCode::TooFewColumns, fmt::format("{} columns, need >= 2", k));
  MiCurve mi;
  mi.bins = bins;
  mi.values.resize(k);
  std::vector<double> h(k);
  for (std::size_t c = 0; c < k; ++c) h[c] = entropy_unchecked(nde.probs.col(c));
  for (std::size_t c = 1; c < k; ++c)
    mi.values[c] = h[c] + h[c - 1] - joint_entropy(nde.probs.col(c), nde.probs.col(c - 1), bins);
  mi.values[0] = mi.values[1];
  return mi;
}

std::size_t effective_budget(std::size_t requested, std::size_t frames) {
  return std::min(requested, frames / 10);
}

AutoLabels auto_label(const MiCurve &mi, std::size_t budget) {
  const std::size_t k = mi.values.size();
  if (2 * budget > k)
    throw Error(ErrorCode::BudgetTooLarge, fmt::format("2 x {} labels for {} frames", budget, k));
  if (budget == 0) throw Error(ErrorCode::BudgetTooLarge, "budget must be >= 1");
  const auto [lo, hi] = std::minmax_element(mi.values.begin(), mi.values.end());
  if (*hi - *lo < 1e-9) throw Error(ErrorCode::DegenerateCurve, "MI curve has no contrast");

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mi.values[a] < mi.values[b]; });
  AutoLabels labels;
  labels.budget = budget;
  labels.positive_indices.assign(order.begin(), order.begin() + static_cast<long>(budget));

  std::vector<std::size_t> desc(k);
  std::iota(desc.begin(), desc.end(), 0);
  std::stable_sort(desc.begin(), desc.end(),
                   [&](std::size_t a, std::size_t b) { return mi.values[a] > mi.values[b]; });
  // Ties straddling both cut points stay with the positives.
  std::vector<std::uint8_t> taken(k, 0);
  for (std::size_t i : labels.positive_indices) taken[i] = 1;
  for (std::size_t i : desc) {
    if (labels.negative_indices.size() == budget) break;
    if (!taken[i]) labels.negative_indices.push_back(i);
  }

  std::sort(labels.positive_indices.begin(), labels.positive_indices.end());
  std::sort(labels.negative_indices.begin(), labels.negative_indices.end());
  std::vector<std::size_t> both;
  std::set_intersection(labels.positive_indices.begin(), labels.positive_indices.end(),
                        labels.negative_indices.begin(), labels.negative_indices.end(),
                        std::back_inserter(both));
  if (!both.empty())
    throw Error(ErrorCode::DegenerateCurve, "positive and negative label sets overlap");
  return labels;
}

std::vector<double> normalized_mi(const MiCurve &mi, std::size_t atoms) {
  const double scale = atoms > 1 ? 2.0 * std::log2(static_cast<double>(atoms)) : 1.0;
  std::vector<double> out(mi.values.size());
  std::transform(mi.values.begin(), mi.values.end(), out.begin(), [&](double v) { return v / scale; });
  return out;
}

void write_mi_csv(const MiCurve &mi, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << "frame_index,mi_value\n";
  for (std::size_t k = 0; k < mi.values.size(); ++k) out << k << ',' << fmt::format("{:.12g}", mi.values[k]) << '\n';
}

}  // namespace dirseg
