// src/pipeline.cpp

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

#include "dirseg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "dirseg/errors.hpp"

namespace dirseg {

const char *to_string(SvmFeature f) { return f == SvmFeature::Raw ? "raw" : "softmax"; }

SvmFeature parse_svm_feature(const std::string &s) {
  if (s == "raw") return SvmFeature::Raw;
  if (s == "softmax") return SvmFeature::Softmax;
  throw Error(ErrorCode::InvalidArgument, "feature_for_svm must be 'raw' or 'softmax', got '" + s + "'");
}

void PipelineParams::validate() const {
  auto bad = [](const std::string &why) { throw Error(ErrorCode::InvalidArgument, why); };
  if (w < 1 || w % 2 == 0) bad(fmt::format("window w must be odd and >= 1, got {}", w));
  if (q < 1) bad("Q must be >= 1");
  if (mi_bins < 2) bad("mi_bins must be >= 2");
  if (!(mi_min_contrast >= 0.0)) bad("mi_min_contrast must be >= 0");
  if (median_len < 1) bad("median length must be >= 1");
  if (median_len % 2 == 0) throw Error(ErrorCode::EvenMedianLength, fmt::format("median length {}", median_len));
  if (!(min_segment_ms > 0.0) || !(merge_gap_ms > 0.0)) bad("segment durations must be positive");
  if (!(svm.C > 0.0)) bad("SVM C must be positive");
  if (!(svm.tol > 0.0)) bad("SVM tol must be positive");
}

SegmentationResult segment_recording(const AudioClip &clip, const movmf::DirectionDictionary &dict,
                                     const PipelineParams &params) {
  params.validate();
  SegmentationResult result;
  Diagnostics &diag = result.diagnostics;

  const Spectrogram spec = stft_magnitude(clip, params.stft);
  if (spec.frames() < static_cast<std::size_t>(params.w))
    throw Error(ErrorCode::ClipTooShort,
                fmt::format("{} frames, need at least w = {}", spec.frames(), params.w));
  if (spec.bins() * static_cast<std::size_t>(params.w) != dict.dim())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("super-frame dim {} x {} vs dictionary dim {}", params.w, spec.bins(), dict.dim()));
  for (auto &w : provenance_warnings(dict, params.stft, params.w, clip.sample_rate)) {
    spdlog::warn("dictionary provenance: {}", w);
    diag.warnings.push_back("provenance: " + w);
  }
  result.hop_s = spec.hop_seconds();
  result.frame_s = spec.frame_seconds();
  const std::size_t n = spec.frames();

  SuperFrameMatrix sf = superframes(spec, params.w);
  sf = unit_normalize(std::move(sf), relative_eps(sf, params.eps_rel));
  diag.flagged_frames = static_cast<std::size_t>(std::count(sf.unit_flags.begin(), sf.unit_flags.end(), 0));

  result.de = project(dict, sf);
  const NormalizedDE nde = softmax_normalize(result.de);
  result.mi_curve = mi_curve(nde, params.mi_bins);

  diag.effective_q = effective_budget(params.q, n);
  if (diag.effective_q < 1)
    throw Error(ErrorCode::ClipTooShort, fmt::format("{} frames leave no auto-label budget", n));
  if (diag.effective_q < params.q) {
    diag.q_reduced = true;
    spdlog::info("Q reduced from {} to {} for {} frames", params.q, diag.effective_q, n);
  }

  auto fallback = [&](const std::string &why) {
    diag.degenerate_fallback = true;
    diag.warnings.push_back("degenerate MI curve: " + why);
    spdlog::warn("degenerate MI curve ({}); emitting no segments", why);
    result.raw_decisions.assign(n, Label::Background);
    result.frame_decisions = result.raw_decisions;
    return result;
  };
  try {
    result.labels = auto_label(result.mi_curve, diag.effective_q);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::DegenerateCurve) throw;
    return fallback(e.what());
  }
  {
    std::vector<double> sorted = result.mi_curve.values;
    std::sort(sorted.begin(), sorted.end());
    const double contrast = sorted[n - diag.effective_q] - sorted[diag.effective_q - 1];
    if (contrast < params.mi_min_contrast)
      return fallback(fmt::format("contrast {:.4g} bits < {:.4g}", contrast, params.mi_min_contrast));
  }

  const Matrix &features = params.feature == SvmFeature::Raw ? result.de.coeffs : nde.probs;
  std::vector<std::size_t> train_idx = result.labels.positive_indices;
  train_idx.insert(train_idx.end(), result.labels.negative_indices.begin(), result.labels.negative_indices.end());
  std::vector<int> y(result.labels.positive_indices.size(), 1);
  y.resize(train_idx.size(), -1);

  const svm::SvmModel model = svm::train_svm(features.select_cols(train_idx), y, params.svm);
  diag.svm_converged = model.converged;
  diag.svm_iterations = model.iterations;
  diag.support_vectors = model.coef.size();
  if (!model.converged) {
    diag.warnings.push_back("svm did not converge");
    spdlog::warn("SVM stopped after {} iterations without meeting tol {}", model.iterations, params.svm.tol);
  }

  result.raw_decisions = svm::predict(model, features);
  // Silent super-frames carry no direction; they are background by definition.
  for (std::size_t k = 0; k < n; ++k)
    if (!sf.unit_flags[k]) result.raw_decisions[k] = Label::Background;
  result.frame_decisions = smooth_decisions(result.raw_decisions, params.median_len);
  result.segments = frames_to_segments(result.frame_decisions, result.hop_s, result.frame_s,
                                       params.min_segment_ms, params.merge_gap_ms);
  return result;
}

Decisions smooth_decisions(const Decisions &decisions, int median_len) {
  if (median_len < 1 || median_len % 2 == 0)
    throw Error(ErrorCode::EvenMedianLength, fmt::format("median length {}", median_len));
  const long n = static_cast<long>(decisions.size());
  const long half = median_len / 2;
  Decisions out(decisions.size());
  for (long k = 0; k < n; ++k) {
    long votes = 0;
    for (long o = -half; o <= half; ++o)
      votes += decisions[static_cast<std::size_t>(std::clamp(k + o, 0L, n - 1))] == Label::Bird;
    out[static_cast<std::size_t>(k)] = votes > half ? Label::Bird : Label::Background;
  }
  return out;
}

std::vector<Interval> frames_to_segments(const Decisions &decisions, double hop_s, double frame_s,
                                         double min_segment_ms, double merge_gap_ms) {
  struct Run {
    std::size_t first, last;
  };
  std::vector<Run> runs;
  for (std::size_t k = 0; k < decisions.size();) {
    if (decisions[k] != Label::Bird) {
      ++k;
      continue;
    }
    std::size_t e = k;
    while (e + 1 < decisions.size() && decisions[e + 1] == Label::Bird) ++e;
    runs.push_back({k, e});
    k = e + 1;
  }
  std::vector<Run> merged;
  for (const Run &r : runs) {
    if (!merged.empty()) {
      Run &prev = merged.back();
      const double gap_s = static_cast<double>(r.first - prev.last - 1) * hop_s;
      const bool overlaps = static_cast<double>(r.first) * hop_s < static_cast<double>(prev.last) * hop_s + frame_s;
      if (gap_s < merge_gap_ms * 1e-3 || overlaps) {
        prev.last = r.last;
        continue;
      }
    }
    merged.push_back(r);
  }
  std::vector<Interval> out;
  for (const Run &r : merged) {
    Interval iv{static_cast<double>(r.first) * hop_s, static_cast<double>(r.last) * hop_s + frame_s};
    if (iv.duration() + 1e-12 >= min_segment_ms * 1e-3) out.push_back(iv);
  }
  return out;
}

void write_segments_csv(const std::vector<Interval> &segments, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << "onset_s,offset_s\n";
  for (const auto &s : segments) out << fmt::format("{:.6f},{:.6f}\n", s.onset_s, s.offset_s);
}

void write_decisions_csv(const Decisions &decisions, double hop_s, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << "frame_index,time_s,bird\n";
  for (std::size_t k = 0; k < decisions.size(); ++k)
    out << fmt::format("{},{:.6f},{}\n", k, static_cast<double>(k) * hop_s,
                       decisions[k] == Label::Bird ? 1 : 0);
}

std::string diagnostics_json(const Diagnostics &diag) {
  nlohmann::json j;
  j["effective_Q"] = diag.effective_q;
  j["q_reduced"] = diag.q_reduced;
  j["degenerate_fallback"] = diag.degenerate_fallback;
  j["svm_converged"] = diag.svm_converged;
  j["svm_iterations"] = diag.svm_iterations;
  j["support_vectors"] = diag.support_vectors;
  j["flagged_frames"] = diag.flagged_frames;
  j["peak_rescale"] = diag.peak_rescale;
  j["warnings"] = diag.warnings;
  return j.dump();
}

}  // namespace dirseg
