// include/dirseg/pipeline.hpp

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

#include "dirseg/audio.hpp"
#include "dirseg/embedding.hpp"
#include "dirseg/labeling.hpp"
#include "dirseg/movmf.hpp"
#include "dirseg/spectral.hpp"
#include "dirseg/svm.hpp"

namespace dirseg {

enum class SvmFeature { Raw, Softmax };

const char *to_string(SvmFeature f);
SvmFeature parse_svm_feature(const std::string &s);

struct PipelineParams {
  StftParams stft;
  int w = 5;
  std::size_t q = 2000;
  int mi_bins = 16;
  // Minimum gap (bits) between the Q-th highest and Q-th lowest MI value; below
  // it the recording is treated as containing no vocalizations.
  double mi_min_contrast = 0.1;
  svm::SvmParams svm;
  int median_len = 5;
  double min_segment_ms = 30.0;
  double merge_gap_ms = 20.0;
  SvmFeature feature = SvmFeature::Raw;
  double eps_rel = 1e-12;

  void validate() const;
};

struct Diagnostics {
  std::size_t effective_q = 0;
  bool q_reduced = false;
  bool degenerate_fallback = false;
  bool svm_converged = true;
  long svm_iterations = 0;
  std::size_t support_vectors = 0;
  std::size_t flagged_frames = 0;
  double peak_rescale = 1.0;
  std::vector<std::string> warnings;
};

struct SegmentationResult {
  Decisions raw_decisions;    // classifier output
  Decisions frame_decisions;  // after median smoothing
  std::vector<Interval> segments;
  MiCurve mi_curve;
  AutoLabels labels;
  DEMatrix de;
  double hop_s = 0.0;
  double frame_s = 0.0;
  Diagnostics diagnostics;
};

// Pass 1 (DE, MI, auto-labels) and pass 2 (per-recording SVM) on one clip.
SegmentationResult segment_recording(const AudioClip &clip, const movmf::DirectionDictionary &dict,
                                     const PipelineParams &params);

// Sliding majority vote over an odd window with edge replication.
Decisions smooth_decisions(const Decisions &decisions, int median_len);

// Run k_start..k_end becomes [k_start hop, k_end hop + frame]. Runs whose hop-grid
// gap is below merge_gap_ms are merged; segments shorter than min_segment_ms dropped.
std::vector<Interval> frames_to_segments(const Decisions &decisions, double hop_s, double frame_s,
                                         double min_segment_ms, double merge_gap_ms);

// Header `onset_s,offset_s`, six decimals.
void write_segments_csv(const std::vector<Interval> &segments, const std::filesystem::path &path);
void write_decisions_csv(const Decisions &decisions, double hop_s,
                         const std::filesystem::path &path);

std::string diagnostics_json(const Diagnostics &diag);

}  // namespace dirseg
