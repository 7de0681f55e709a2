// src/evalkit.cpp

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

#include "dirseg/evalkit.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <omp.h>
#include <spdlog/spdlog.h>

#include "dirseg/errors.hpp"
#include "dirseg/spectral.hpp"

namespace dirseg {

void EvalReport::finalize() {
  const double tp = static_cast<double>(true_positives);
  const std::size_t pp = true_positives + false_positives;
  const std::size_t ap = true_positives + false_negatives;
  precision = pp == 0 ? 0.0 : tp / static_cast<double>(pp);
  recall = ap == 0 ? 0.0 : tp / static_cast<double>(ap);
  f1 = precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
}

EvalReport &EvalReport::operator+=(const EvalReport &other) {
  true_positives += other.true_positives;
  false_positives += other.false_positives;
  false_negatives += other.false_negatives;
  true_negatives += other.true_negatives;
  return *this;
}

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string &s, double &v) {
  if (s.empty()) return false;
  errno = 0;
  char *end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size() && std::isfinite(v);
}

}  // namespace

GroundTruth parse_labels_text(const std::string &text, const std::string &recording_id,
                              std::vector<std::string> *warnings) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  GroundTruth gt;
  gt.recording_id = recording_id;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto cells = split_csv(t);
    if (!header_seen) {
      header_seen = true;
      if (cells.size() < 2 || cells.size() > 3 || cells[0] != "onset_s" || cells[1] != "offset_s" ||
          (cells.size() == 3 && cells[2] != "type"))
        throw Error(ErrorCode::MalformedRow,
                    fmt::format("line {}: expected header onset_s,offset_s[,type]", line_no));
      continue;
    }
    if (cells.size() < 2 || cells.size() > 3)
      throw Error(ErrorCode::MalformedRow, fmt::format("line {}: expected 2 or 3 fields, got {}", line_no, cells.size()));
    Interval iv;
    if (!parse_double(cells[0], iv.onset_s) || !parse_double(cells[1], iv.offset_s))
      throw Error(ErrorCode::MalformedRow, fmt::format("line {}: non-numeric time", line_no));
    if (iv.onset_s < 0.0) throw Error(ErrorCode::MalformedRow, fmt::format("line {}: negative onset", line_no));
    if (!(iv.offset_s > iv.onset_s))
      throw Error(ErrorCode::NegativeDuration,
                  fmt::format("line {}: offset {} not after onset {}", line_no, iv.offset_s, iv.onset_s));
    gt.intervals.push_back(iv);
  }
  if (!header_seen) throw Error(ErrorCode::MalformedRow, "line 1: missing header onset_s,offset_s");

  std::stable_sort(gt.intervals.begin(), gt.intervals.end(),
                   [](const Interval &a, const Interval &b) { return a.onset_s < b.onset_s; });
  std::vector<Interval> merged;
  for (const Interval &iv : gt.intervals) {
    if (!merged.empty() && iv.onset_s < merged.back().offset_s) {
      const std::string msg = fmt::format("{}overlapping intervals ({:.6f}, {:.6f}) and ({:.6f}, {:.6f}) merged",
                                          recording_id.empty() ? "" : recording_id + ": ", merged.back().onset_s,
                                          merged.back().offset_s, iv.onset_s, iv.offset_s);
      spdlog::warn("{}", msg);
      if (warnings) warnings->push_back(msg);
      merged.back().offset_s = std::max(merged.back().offset_s, iv.offset_s);
      continue;
    }
    merged.push_back(iv);
  }
  gt.intervals = std::move(merged);
  return gt;
}

GroundTruth parse_labels(const std::filesystem::path &path, std::vector<std::string> *warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_labels_text(ss.str(), path.stem().string(), warnings);
  } catch (const Error &e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_labels(const GroundTruth &gt, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << "onset_s,offset_s\n";
  for (const auto &iv : gt.intervals) out << fmt::format("{:.6f},{:.6f}\n", iv.onset_s, iv.offset_s);
}

Decisions intervals_to_frame_labels(std::span<const Interval> intervals, std::size_t n_frames, double frame_s,
                                    double hop_s, double min_overlap) {
  constexpr double kTieSlack = 1e-9;
  Decisions out(n_frames, Label::Background);
  std::size_t first = 0;
  for (std::size_t k = 0; k < n_frames; ++k) {
    const double a = static_cast<double>(k) * hop_s;
    const double b = a + frame_s;
    while (first < intervals.size() && intervals[first].offset_s <= a) ++first;
    double covered = 0.0;
    for (std::size_t j = first; j < intervals.size() && intervals[j].onset_s < b; ++j)
      covered += std::max(0.0, std::min(b, intervals[j].offset_s) - std::max(a, intervals[j].onset_s));
    if (covered > min_overlap * frame_s + kTieSlack) out[k] = Label::Bird;
  }
  return out;
}

EvalReport frame_f1(const Decisions &pred, const Decisions &truth) {
  if (pred.size() != truth.size())
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} predictions vs {} truth frames", pred.size(), truth.size()));
  EvalReport r;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const bool p = pred[k] == Label::Bird;
    const bool t = truth[k] == Label::Bird;
    if (p && t) ++r.true_positives;
    else if (p) ++r.false_positives;
    else if (t) ++r.false_negatives;
    else ++r.true_negatives;
  }
  r.finalize();
  return r;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "quantile of an empty set");
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidArgument, fmt::format("quantile {} outside [0, 1]", q));
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return frac == 0.0 ? values[lo] : values[lo] + frac * (values[hi] - values[lo]);
}

Decisions baseline_energy(const AudioClip &clip, const StftParams &stft, double threshold_quantile) {
  const Spectrogram spec = stft_magnitude(clip, stft);
  std::vector<double> energy(spec.frames());
  for (std::size_t k = 0; k < spec.frames(); ++k) {
    double e = 0.0;
    for (double m : spec.mags.col(k)) e += m * m;
    energy[k] = std::log(e + 1e-300);
  }
  const double thr = quantile(energy, threshold_quantile);
  Decisions out(energy.size(), Label::Background);
  for (std::size_t k = 0; k < energy.size(); ++k)
    if (energy[k] > thr) out[k] = Label::Bird;
  return out;
}

std::vector<SweepRow> snr_sweep(std::span<const CorpusItem> corpus, std::span<const NoiseSource> noises,
                                std::span<const double> snrs_db, const movmf::DirectionDictionary &dict,
                                const PipelineParams &params, const SweepOptions &options) {
  if (corpus.empty()) throw Error(ErrorCode::InvalidArgument, "snr sweep needs a non-empty corpus");
  if (snrs_db.empty()) throw Error(ErrorCode::InvalidArgument, "snr sweep needs at least one SNR");
  if (noises.empty()) throw Error(ErrorCode::InvalidArgument, "snr sweep needs at least one noise");
  params.validate();

  struct CellResult {
    EvalReport pipeline, energy;
    bool fallback = false;
  };
  const std::size_t n_clips = corpus.size();
  const std::size_t n_cells = noises.size() * snrs_db.size() * n_clips;
  std::vector<CellResult> cells(n_cells);
  std::vector<std::exception_ptr> errors(n_cells);
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t c = 0; c < n_cells; ++c) {
    try {
      const std::size_t clip = c % n_clips;
      const std::size_t snr = (c / n_clips) % snrs_db.size();
      const std::size_t noise = c / (n_clips * snrs_db.size());
      const CorpusItem &item = corpus[clip];
      const MixResult mix = mix_at_snr(item.clip, noises[noise].clip, snrs_db[snr]);
      const SegmentationResult seg = segment_recording(mix.clip, dict, params);
      const std::size_t n = seg.frame_decisions.size();
      const Decisions truth = intervals_to_frame_labels(item.truth.intervals, n, seg.frame_s, seg.hop_s);
      const Decisions pred = intervals_to_frame_labels(seg.segments, n, seg.frame_s, seg.hop_s);
      cells[c].pipeline = frame_f1(pred, truth);
      cells[c].energy = frame_f1(baseline_energy(mix.clip, params.stft, options.baseline_quantile), truth);
      cells[c].fallback = seg.diagnostics.degenerate_fallback;
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<SweepRow> rows;
  for (std::size_t ni = 0; ni < noises.size(); ++ni) {
    for (std::size_t si = 0; si < snrs_db.size(); ++si) {
      SweepRow pipe{noises[ni].name, snrs_db[si], "pipeline", {}, 0.0, 0};
      SweepRow energy{noises[ni].name, snrs_db[si], "energy", {}, 0.0, 0};
      for (std::size_t ci = 0; ci < n_clips; ++ci) {
        const CellResult &cell = cells[(ni * snrs_db.size() + si) * n_clips + ci];
        pipe.pooled += cell.pipeline;
        energy.pooled += cell.energy;
        pipe.mean_file_f1 += cell.pipeline.f1 / static_cast<double>(n_clips);
        energy.mean_file_f1 += cell.energy.f1 / static_cast<double>(n_clips);
        pipe.degenerate_fallbacks += cell.fallback;
      }
      pipe.pooled.finalize();
      energy.pooled.finalize();
      spdlog::info("{} @ {} dB: pipeline F1 {:.4f}, energy F1 {:.4f}", noises[ni].name, snrs_db[si], pipe.pooled.f1,
                   energy.pooled.f1);
      rows.push_back(std::move(pipe));
      rows.push_back(std::move(energy));
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "noise,snr_db,method,precision,recall,f1\n";
  for (const auto &r : rows)
    out += fmt::format("{},{:g},{},{:.6f},{:.6f},{:.6f}\n", r.noise, r.snr_db, r.method, r.pooled.precision,
                       r.pooled.recall, r.pooled.f1);
  return out;
}

void write_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << sweep_csv(rows);
}

DictionaryTraining train_dictionary(std::span<const CorpusItem> items, const PipelineParams &params,
                                    const movmf::EmConfig &em, int keep) {
  params.validate();
  std::vector<double> pooled;
  std::size_t dim = 0, count = 0;
  int sample_rate = 0;
  std::vector<std::string> files;
  for (const CorpusItem &item : items) {
    if (sample_rate == 0) sample_rate = item.clip.sample_rate;
    if (item.clip.sample_rate != sample_rate)
      throw Error(ErrorCode::SampleRateMismatch,
                  fmt::format("{} is {} Hz, expected {}", item.id, item.clip.sample_rate, sample_rate));
    const Spectrogram spec = stft_magnitude(item.clip, params.stft);
    SuperFrameMatrix sf = superframes(spec, params.w);
    sf = unit_normalize(std::move(sf), relative_eps(sf, params.eps_rel));
    const Decisions bird =
        intervals_to_frame_labels(item.truth.intervals, spec.frames(), spec.frame_seconds(), spec.hop_seconds());
    dim = sf.dim();
    std::size_t used = 0;
    for (std::size_t k = 0; k < sf.count(); ++k) {
      if (bird[k] != Label::Bird || !sf.unit_flags[k]) continue;
      auto col = sf.data.col(k);
      pooled.insert(pooled.end(), col.begin(), col.end());
      ++used;
    }
    count += used;
    files.push_back(item.id);
    spdlog::info("{}: {} vocalization super-frames of {}", item.id, used, sf.count());
  }
  if (count == 0) throw Error(ErrorCode::NoVocalizationFrames, "labels cover no analysable frames");

  Matrix data(dim, count);
  std::copy(pooled.begin(), pooled.end(), data.data());
  DictionaryTraining out;
  out.fit = movmf::fit(data, em);
  if (!out.fit.converged) spdlog::warn("EM stopped after {} iterations without converging", out.fit.iterations);

  movmf::DictionaryProvenance prov;
  prov.stft = params.stft;
  prov.w = params.w;
  prov.d = params.stft.bins();
  prov.sample_rate = sample_rate;
  prov.num_components = em.num_components;
  prov.seed = em.seed;
  prov.training_frames = count;
  prov.training_files = std::move(files);
  out.dict = movmf::build_dictionary(out.fit.mixture, keep, std::move(prov));
  return out;
}

}  // namespace dirseg
