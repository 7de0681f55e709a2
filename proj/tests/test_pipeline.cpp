// tests/test_pipeline.cpp

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

#include <algorithm>
#include <cstring>
#include <fstream>

#include "corpus_support.hpp"
#include "dirseg/evalkit.hpp"
#include "dirseg/pipeline.hpp"
#include "test_support.hpp"

using namespace dirseg;
using dirseg::test::expect_error;

namespace {

constexpr Label B = Label::Bird, N = Label::Background;

Decisions bits(const std::string &s) {
  Decisions d;
  for (char c : s) d.push_back(c == '1' ? B : N);
  return d;
}

// Sort-based median with edge replication.
Decisions brute_median(const Decisions &d, int len) {
  const long n = static_cast<long>(d.size()), h = len / 2;
  Decisions out(d.size());
  for (long k = 0; k < n; ++k) {
    std::vector<int> win;
    for (long j = k - h; j <= k + h; ++j) win.push_back(static_cast<int>(d[static_cast<std::size_t>(std::clamp(j, 0L, n - 1))]));
    std::sort(win.begin(), win.end());
    out[static_cast<std::size_t>(k)] = static_cast<Label>(win[win.size() / 2]);
  }
  return out;
}

const movmf::DirectionDictionary &dictionary() {
  static const movmf::DirectionDictionary d = test::trained_dictionary();
  return d;
}

std::vector<CorpusItem> test_clips(double snr, int count = 3) {
  SynthSpec spec;
  spec.clip_count = count;
  spec.snr_db = snr;
  spec.seed = 321;
  return test::synth_items(spec);
}

}  // namespace

TEST_CASE("smoothing examples") {
  CHECK(smooth_decisions(bits("0000100000"), 5) == bits("0000000000"));
  CHECK(smooth_decisions(bits("1111111"), 5) == bits("1111111"));
  CHECK(smooth_decisions(bits("0101010101"), 3) == brute_median(bits("0101010101"), 3));
  CHECK(smooth_decisions(bits("1101"), 1) == bits("1101"));
  CHECK(smooth_decisions(Decisions{}, 5).empty());
  expect_error(ErrorCode::EvenMedianLength, [] { smooth_decisions(bits("0101"), 4); });
}

TEST_CASE("property: smoothing matches a brute-force median") {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.4);
  for (int len : {1, 3, 5, 7, 9}) {
    for (int trial = 0; trial < 20; ++trial) {
      Decisions d(static_cast<std::size_t>(1 + trial * 7));
      for (auto &x : d) x = coin(rng) ? B : N;
      const Decisions s = smooth_decisions(d, len);
      CHECK(s.size() == d.size());
      CHECK(s == brute_median(d, len));
    }
  }
}

TEST_CASE("frames_to_segments examples") {
  const auto one = frames_to_segments(bits("001110"), 0.010, 0.020, 0.0, 0.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].onset_s == doctest::Approx(0.020));
  CHECK(one[0].offset_s == doctest::Approx(0.060));

  const auto merged = frames_to_segments(bits("0111011100"), 0.010, 0.020, 30.0, 20.0);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].onset_s == doctest::Approx(0.010));
  CHECK(merged[0].offset_s == doctest::Approx(0.090));

  // Hop equal to frame length so two frames span 40 ms.
  CHECK(frames_to_segments(bits("0110"), 0.020, 0.020, 50.0, 0.0).empty());
  CHECK(frames_to_segments(bits("0110"), 0.020, 0.020, 40.0, 0.0).size() == 1);
  CHECK(frames_to_segments(bits("0000"), 0.010, 0.020, 30.0, 20.0).empty());

  const auto apart = frames_to_segments(bits("11000011"), 0.010, 0.020, 0.0, 20.0);
  CHECK(apart.size() == 2);
}

TEST_CASE("property: segments round-trip to frame decisions") {
  // Under the default grid a one-frame gap is always merged and a lone frame is
  // always below the minimum duration; everything else must come back unchanged.
  const double hop = 0.010, frame = 0.020;
  std::mt19937_64 rng(12);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    Decisions d(60);
    for (auto &x : d) x = coin(rng) ? B : N;
    Decisions expect = d;
    for (std::size_t k = 1; k + 1 < expect.size(); ++k)
      if (d[k] == N && d[k - 1] == B && d[k + 1] == B) expect[k] = B;
    for (std::size_t k = 0; k < expect.size(); ++k) {
      const bool left = k > 0 && expect[k - 1] == B, right = k + 1 < expect.size() && expect[k + 1] == B;
      if (expect[k] == B && !left && !right) expect[k] = N;
    }
    const auto segs = frames_to_segments(d, hop, frame, 30.0, 20.0);
    for (std::size_t i = 0; i < segs.size(); ++i) {
      CHECK(segs[i].offset_s > segs[i].onset_s);
      CHECK(segs[i].duration() >= 0.030 - 1e-12);
      if (i) CHECK(segs[i].onset_s > segs[i - 1].offset_s);
    }
    CHECK(intervals_to_frame_labels(segs, d.size(), frame, hop) == expect);
  }
}

TEST_CASE("segment CSV format") {
  const auto path = test::scratch_dir("pipeline_csv") / "seg.csv";
  write_segments_csv({{0.02, 0.06}, {1.5, 2.25}}, path);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == "onset_s,offset_s\n0.020000,0.060000\n1.500000,2.250000\n");
}

TEST_CASE("parameter validation") {
  PipelineParams p;
  p.median_len = 4;
  CHECK_THROWS_AS(p.validate(), Error);
  p = PipelineParams{};
  p.min_segment_ms = -1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  CHECK(parse_svm_feature(to_string(SvmFeature::Softmax)) == SvmFeature::Softmax);
}

TEST_CASE("segment_recording preconditions") {
  AudioClip tiny;
  tiny.samples.assign(441 * 3, 0.1);
  expect_error(ErrorCode::ClipTooShort, [&] { segment_recording(tiny, dictionary(), PipelineParams{}); });
  PipelineParams p;
  p.w = 3;
  const auto clips = test_clips(20.0, 1);
  expect_error(ErrorCode::DimensionMismatch, [&] { segment_recording(clips[0].clip, dictionary(), p); });
}

TEST_CASE("pure noise falls back to no segments") {
  for (NoiseKind kind : {NoiseKind::White, NoiseKind::Pink, NoiseKind::Rain}) {
    const AudioClip noise = generate_noise(kind, 441000, 44100, 4);
    const SegmentationResult r = segment_recording(noise, dictionary(), PipelineParams{});
    INFO(to_string(kind));
    CHECK(r.diagnostics.degenerate_fallback);
    CHECK(r.segments.empty());
    CHECK(std::none_of(r.frame_decisions.begin(), r.frame_decisions.end(), [](Label l) { return l == B; }));
  }
  AudioClip silence;
  silence.samples.assign(44100 * 2, 0.0);
  const SegmentationResult s = segment_recording(silence, dictionary(), PipelineParams{});
  CHECK(s.diagnostics.degenerate_fallback);
  CHECK(s.segments.empty());
}

TEST_CASE("end-to-end frame F1 at 20 dB") {
  EvalReport pooled;
  for (const auto &item : test_clips(20.0)) {
    const SegmentationResult r = segment_recording(item.clip, dictionary(), PipelineParams{});
    REQUIRE(!r.diagnostics.degenerate_fallback);
    CHECK(r.frame_decisions.size() == r.raw_decisions.size());
    CHECK(r.mi_curve.values.size() == r.frame_decisions.size());
    for (std::size_t k : r.labels.positive_indices) CHECK(k < r.frame_decisions.size());
    for (std::size_t k : r.labels.negative_indices) CHECK(k < r.frame_decisions.size());
    const Decisions truth = intervals_to_frame_labels(item.truth.intervals, r.frame_decisions.size(), r.frame_s, r.hop_s);
    const Decisions pred = intervals_to_frame_labels(r.segments, r.frame_decisions.size(), r.frame_s, r.hop_s);
    const EvalReport rep = frame_f1(pred, truth);
    INFO(item.id << " f1 " << rep.f1);
    CHECK(rep.f1 >= 0.85);
    pooled += rep;
  }
  pooled.finalize();
  INFO("pooled f1 " << pooled.f1);
  CHECK(pooled.f1 >= 0.90);
}

TEST_CASE("property: segmentation is deterministic") {
  const auto clip = test_clips(10.0, 1)[0].clip;
  const SegmentationResult a = segment_recording(clip, dictionary(), PipelineParams{});
  const SegmentationResult b = segment_recording(clip, dictionary(), PipelineParams{});
  CHECK(a.raw_decisions == b.raw_decisions);
  CHECK(a.frame_decisions == b.frame_decisions);
  CHECK(a.segments == b.segments);
  CHECK(a.mi_curve.values == b.mi_curve.values);
  CHECK(std::memcmp(a.de.coeffs.data(), b.de.coeffs.data(), sizeof(double) * a.de.coeffs.rows() * a.de.coeffs.cols()) == 0);
}

TEST_CASE("property: scaling the input leaves decisions unchanged") {
  const auto clip = test_clips(15.0, 1)[0].clip;
  const SegmentationResult ref = segment_recording(clip, dictionary(), PipelineParams{});
  for (double c : {0.9, 0.5, 0.1, 0.01}) {
    const SegmentationResult r = segment_recording(clip.scaled(c), dictionary(), PipelineParams{});
    INFO("gain " << c);
    CHECK(r.frame_decisions == ref.frame_decisions);
  }
}

TEST_CASE("softmax features also segment") {
  PipelineParams p;
  p.feature = SvmFeature::Softmax;
  const auto item = test_clips(20.0, 1)[0];
  const SegmentationResult r = segment_recording(item.clip, dictionary(), p);
  const Decisions truth = intervals_to_frame_labels(item.truth.intervals, r.frame_decisions.size(), r.frame_s, r.hop_s);
  CHECK(frame_f1(r.frame_decisions, truth).f1 > 0.5);
}
