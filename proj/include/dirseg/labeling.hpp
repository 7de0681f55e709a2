// include/dirseg/labeling.hpp

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

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "dirseg/embedding.hpp"

namespace dirseg {

// values[k] is the mutual information between normalized DE columns k-1 and k;
// values[0] repeats values[1] so the curve has one value per frame.
struct MiCurve {
  std::vector<double> values;
  int bins = 16;
};

struct AutoLabels {
  std::vector<std::size_t> positive_indices;  // lowest MI -> bird
  std::vector<std::size_t> negative_indices;  // highest MI -> background
  std::size_t budget = 0;
};

// Shannon entropy in bits, 0 log 0 = 0.
double entropy(std::span<const double> p);

// Coordinates of a and b are quantized into `bins` equal cells over [0, 1];
// the pairs (bin(a_j), bin(b_j)) form a histogram normalized by the length.
double joint_entropy(std::span<const double> a, std::span<const double> b, int bins);

MiCurve mi_curve(const NormalizedDE &nde, int bins);

// min(requested, floor(0.1 K)).
std::size_t effective_budget(std::size_t requested, std::size_t frames);

// Q smallest MI values become positives, Q largest negatives; ties go to the
// lower index. Throws DegenerateCurve when max - min < 1e-9.
AutoLabels auto_label(const MiCurve &mi, std::size_t budget);

// Normalization used for plots: MI / (2 log2 Z).
std::vector<double> normalized_mi(const MiCurve &mi, std::size_t atoms);

// Header `frame_index,mi_value`.
void write_mi_csv(const MiCurve &mi, const std::filesystem::path &path);

}  // namespace dirseg
