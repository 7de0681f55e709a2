// src/embedding.cpp

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

#include "dirseg/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "dirseg/errors.hpp"
#include "dirseg/kernels.hpp"

namespace dirseg {

DEMatrix project(const movmf::DirectionDictionary &dict, const SuperFrameMatrix &sf) {
  if (sf.dim() != dict.dim())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("super-frame dim {} vs dictionary dim {}", sf.dim(), dict.dim()));
  return {kernels::parallel::gram(dict.atoms, sf.data)};
}

std::vector<std::string> provenance_warnings(const movmf::DirectionDictionary &dict,
                                             const StftParams &stft, int w, int sample_rate) {
  std::vector<std::string> out;
  const auto &pv = dict.provenance;
  if (pv.w != w) out.push_back(fmt::format("context window {} vs dictionary {}", w, pv.w));
  if (pv.sample_rate != sample_rate)
    out.push_back(fmt::format("sample rate {} vs dictionary {}", sample_rate, pv.sample_rate));
  if (pv.stft.frame_ms != stft.frame_ms || pv.stft.overlap != stft.overlap ||
      pv.stft.fft_size != stft.fft_size || pv.stft.window != stft.window)
    out.push_back(fmt::format("STFT {}ms/{}/{}/{} vs dictionary {}ms/{}/{}/{}", stft.frame_ms,
                              stft.overlap, stft.fft_size, to_string(stft.window), pv.stft.frame_ms,
                              pv.stft.overlap, pv.stft.fft_size, to_string(pv.stft.window)));
  return out;
}

NormalizedDE softmax_normalize(const DEMatrix &de) {
  NormalizedDE out{de.coeffs};
  for (std::size_t k = 0; k < out.probs.cols(); ++k) {
    auto col = out.probs.col(k);
    if (col.empty()) continue;
    const double mx = *std::max_element(col.begin(), col.end());
    double s = 0.0;
    for (double &v : col) {
      v = std::exp(v - mx);
      s += v;
    }
    for (double &v : col) v /= s;
  }
  return out;
}

void write_matrix_csv(const Matrix &m, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  for (std::size_t k = 0; k < m.cols(); ++k) {
    auto col = m.col(k);
    for (std::size_t r = 0; r < col.size(); ++r) out << (r ? "," : "") << fmt::format("{:.9g}", col[r]);
    out << '\n';
  }
}

}  // namespace dirseg
