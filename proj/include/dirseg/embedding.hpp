// include/dirseg/embedding.hpp

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

#include <string>
#include <vector>

#include "dirseg/movmf.hpp"
#include "dirseg/spectral.hpp"

namespace dirseg {

// Directional embedding: coeffs = M^T P, one Z_kept-dim column per super-frame.
struct DEMatrix {
  Matrix coeffs;
};

// Column-wise softmax of a DEMatrix; each column is a categorical distribution.
struct NormalizedDE {
  Matrix probs;
};

DEMatrix project(const movmf::DirectionDictionary &dict, const SuperFrameMatrix &sf);

// Differences between the dictionary's analysis settings and the ones used for
// a recording. Empty when they agree; a wd mismatch is an error in project().
std::vector<std::string> provenance_warnings(const movmf::DirectionDictionary &dict,
                                             const StftParams &stft, int w, int sample_rate);

NormalizedDE softmax_normalize(const DEMatrix &de);

// One super-frame per line.
void write_matrix_csv(const Matrix &m, const std::filesystem::path &path);

}  // namespace dirseg
