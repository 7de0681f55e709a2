// include/dirseg/config.hpp

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
#include <filesystem>
#include <string>

#include "dirseg/evalkit.hpp"
#include "dirseg/movmf.hpp"
#include "dirseg/pipeline.hpp"

namespace dirseg {

// Everything a command can be configured with. Defaults reproduce the reference
// regime: 20 ms frames, 50% overlap, FFT 1024, w = 5, Z = 15, keep 10, Q = 2000.
struct Config {
  PipelineParams pipeline;
  movmf::EmConfig em;
  int keep = 10;
  SweepOptions sweep;
  int threads = 0;

  // Sets every seeded stage (EM initialization, SVM scan order).
  void apply_seed(std::uint64_t seed);
  void validate() const;
};

// JSON document with optional sections:
//   stft {frame_ms, overlap, fft_size, window}
//   pipeline {w, q, mi_bins, mi_min_contrast, median_len, min_segment_ms,
//             merge_gap_ms, feature_for_svm, eps_rel}
//   svm {C, degree, gamma, coef0, tol, max_iter, seed}
//   movmf {num_components, keep, max_iters, rel_tol, seed, kappa_max,
//          kappa_init, min_resp_mass, refine_kappa}
//   eval {baseline_quantile}
//   seed, threads
// Unknown keys raise UnknownKey naming the dotted path.
Config config_from_json(const std::string &text);
Config load_config(const std::filesystem::path &path);
std::string config_to_json(const Config &cfg);

}  // namespace dirseg
