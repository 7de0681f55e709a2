// include/dirseg/evalkit.hpp

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
#include <string>
#include <vector>

#include "dirseg/audio.hpp"
#include "dirseg/ground_truth.hpp"
#include "dirseg/movmf.hpp"
#include "dirseg/pipeline.hpp"

namespace dirseg {

struct EvalReport {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t true_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  std::size_t total() const {
    return true_positives + false_positives + false_negatives + true_negatives;
  }
  // Recomputes precision, recall and F1 from the counts (0/0 -> 0).
  void finalize();
  // Pools counts; call finalize() afterwards.
  EvalReport &operator+=(const EvalReport &other);
};

// CSV with header `onset_s,offset_s[,type]`. Overlapping rows are merged and a
// warning is logged (and appended to *warnings when given).
GroundTruth parse_labels(const std::filesystem::path &path, std::vector<std::string> *warnings = nullptr);
GroundTruth parse_labels_text(const std::string &text, const std::string &recording_id = {},
                              std::vector<std::string> *warnings = nullptr);
void write_labels(const GroundTruth &gt, const std::filesystem::path &path);

// Frame k spans [k hop, k hop + frame]. It is bird when more than `min_overlap`
// of that span lies inside the intervals; an overlap of exactly one half does not count,
// so a segment built from a frame run rasterizes back to the same run.
Decisions intervals_to_frame_labels(std::span<const Interval> intervals, std::size_t n_frames,
                                    double frame_s, double hop_s, double min_overlap = 0.5);

EvalReport frame_f1(const Decisions &pred, const Decisions &truth);

// Log energy of each spectrogram column; frames strictly above the
// threshold_quantile of the recording's energies are bird.
Decisions baseline_energy(const AudioClip &clip, const StftParams &stft, double threshold_quantile);

// Linear-interpolated quantile of unsorted values.
double quantile(std::vector<double> values, double q);

struct CorpusItem {
  std::string id;
  AudioClip clip;
  GroundTruth truth;
};

struct NoiseSource {
  std::string name;
  AudioClip clip;
};

struct SweepRow {
  std::string noise;
  double snr_db = 0.0;
  std::string method;    // "pipeline" or "energy"
  EvalReport pooled;     // counts pooled over the corpus
  double mean_file_f1 = 0.0;
  std::size_t degenerate_fallbacks = 0;
};

struct SweepOptions {
  double baseline_quantile = 0.7;
  int threads = 0;  // 0: OpenMP default
};

// For every noise x SNR pair: mix each clip, segment with the pipeline and the energy
// baseline, and score both against the rasterized ground truth. Rows come out ordered
// by noise, then SNR, then method (pipeline first).
std::vector<SweepRow> snr_sweep(std::span<const CorpusItem> corpus, std::span<const NoiseSource> noises,
                                std::span<const double> snrs_db, const movmf::DirectionDictionary &dict,
                                const PipelineParams &params, const SweepOptions &options = {});

struct DictionaryTraining {
  movmf::DirectionDictionary dict;
  movmf::FitResult fit;
};

// Pools the analysable super-frames inside each item's labeled intervals, fits the
// mixture and keeps the `keep` most concentrated atoms. Items must share one rate.
DictionaryTraining train_dictionary(std::span<const CorpusItem> items, const PipelineParams &params,
                                    const movmf::EmConfig &em, int keep);

// Header `noise,snr_db,method,precision,recall,f1`.
void write_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path &path);
std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace dirseg
