// tests/test_evalkit.cpp

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
#include <cmath>
#include <fstream>

#include "corpus_support.hpp"
#include "dirseg/evalkit.hpp"
#include "test_support.hpp"

using namespace dirseg;
using dirseg::test::expect_error;

namespace {

constexpr Label B = Label::Bird, N = Label::Background;

Decisions flip(const Decisions &d) {
  Decisions out(d.size());
  std::transform(d.begin(), d.end(), out.begin(), [](Label l) { return l == B ? N : B; });
  return out;
}

}  // namespace

TEST_CASE("parse_labels examples") {
  std::vector<std::string> warnings;
  const GroundTruth merged = parse_labels_text("onset_s,offset_s\n1.0,2.0\n1.5,2.5\n", "r", &warnings);
  REQUIRE(merged.intervals.size() == 1);
  CHECK(merged.intervals[0] == Interval{1.0, 2.5});
  CHECK(warnings.size() == 1);
  CHECK(merged.recording_id == "r");

  expect_error(ErrorCode::NegativeDuration, [] { parse_labels_text("onset_s,offset_s\n2.0,1.0\n"); });
  CHECK(parse_labels_text("onset_s,offset_s\n").intervals.empty());

  const GroundTruth typed = parse_labels_text("onset_s,offset_s,type\n3.0,4.0,song\n0.5,1.0,call\n");
  REQUIRE(typed.intervals.size() == 2);
  CHECK(typed.intervals[0] == Interval{0.5, 1.0});

  try {
    parse_labels_text("onset_s,offset_s\n0.1,0.2\nabc,0.4\n");
    FAIL("expected MalformedRow");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::MalformedRow);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  expect_error(ErrorCode::MalformedRow, [] { parse_labels_text("start,end\n0,1\n"); });
  expect_error(ErrorCode::MalformedRow, [] { parse_labels_text("onset_s,offset_s\n-1,1\n"); });
  expect_error(ErrorCode::MalformedRow, [] { parse_labels_text("onset_s,offset_s\n1\n"); });
}

TEST_CASE("labels file round trip") {
  const auto path = test::scratch_dir("evalkit_labels") / "gt.csv";
  GroundTruth gt;
  gt.intervals = {{0.25, 0.5}, {1.125, 2.0}};
  write_labels(gt, path);
  CHECK(parse_labels(path).intervals == gt.intervals);
  CHECK(parse_labels(path).recording_id == "gt");
  expect_error(ErrorCode::IoFailure, [&] { parse_labels(path.parent_path() / "missing.csv"); });
}

TEST_CASE("rasterization examples") {
  const std::vector<Interval> exact{{0.030, 0.070}};
  CHECK(intervals_to_frame_labels(exact, 9, 0.020, 0.010) == Decisions{N, N, N, B, B, B, N, N, N});
  // 40% of frame 1's span [0.02, 0.04].
  const std::vector<Interval> partial{{0.032, 0.040}};
  CHECK(intervals_to_frame_labels(partial, 4, 0.020, 0.020)[1] == N);
  const std::vector<Interval> most{{0.028, 0.040}};
  CHECK(intervals_to_frame_labels(most, 4, 0.020, 0.020)[1] == B);
  CHECK(intervals_to_frame_labels({}, 5, 0.020, 0.010) == Decisions(5, N));
  CHECK(intervals_to_frame_labels(exact, 0, 0.020, 0.010).empty());
}

TEST_CASE("property: rasterizing then segmenting recovers intervals within one frame") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> gap(0.05, 0.4), len(0.05, 0.5);
  const double frame = 0.020, hop = 0.010;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Interval> iv;
    double t = gap(rng);
    for (int i = 0; i < 6; ++i) {
      const double l = len(rng);
      iv.push_back({t, t + l});
      t += l + gap(rng);
    }
    const std::size_t n = static_cast<std::size_t>(std::ceil((t + 0.1) / hop));
    const Decisions d = intervals_to_frame_labels(iv, n, frame, hop);
    const auto segs = frames_to_segments(d, hop, frame, 0.0, 0.0);
    REQUIRE(segs.size() == iv.size());
    for (std::size_t i = 0; i < iv.size(); ++i) {
      CHECK(std::abs(segs[i].onset_s - iv[i].onset_s) <= frame);
      CHECK(std::abs(segs[i].offset_s - iv[i].offset_s) <= frame);
    }
  }
}

TEST_CASE("frame_f1 examples") {
  const Decisions truth{B, N, B, B, N};
  const EvalReport same = frame_f1(truth, truth);
  CHECK(same.f1 == 1.0);
  CHECK(frame_f1(Decisions(5, N), truth).f1 == 0.0);
  CHECK(frame_f1(Decisions(5, N), Decisions(5, N)).f1 == 0.0);

  Decisions pred, ref;
  auto push = [&](Label p, Label t, int count) {
    for (int i = 0; i < count; ++i) {
      pred.push_back(p);
      ref.push_back(t);
    }
  };
  push(B, B, 8);
  push(B, N, 2);
  push(N, B, 2);
  push(N, N, 5);
  const EvalReport r = frame_f1(pred, ref);
  CHECK(r.precision == doctest::Approx(0.8));
  CHECK(r.recall == doctest::Approx(0.8));
  CHECK(r.f1 == doctest::Approx(0.8));
  CHECK(r.true_negatives == 5);
  expect_error(ErrorCode::LengthMismatch, [] { frame_f1(Decisions(3, N), Decisions(4, N)); });
}

TEST_CASE("property: class swap and count totals") {
  std::mt19937_64 rng(6);
  std::bernoulli_distribution coin(0.35);
  for (int trial = 0; trial < 100; ++trial) {
    Decisions p(40 + trial), t(40 + trial);
    for (auto &x : p) x = coin(rng) ? B : N;
    for (auto &x : t) x = coin(rng) ? B : N;
    const EvalReport a = frame_f1(p, t), b = frame_f1(flip(p), flip(t));
    CHECK(a.total() == p.size());
    CHECK(b.true_positives == a.true_negatives);
    CHECK(b.false_positives == a.false_negatives);
    CHECK(b.false_negatives == a.false_positives);
    const double neg_precision = a.true_negatives + a.false_negatives
                                     ? double(a.true_negatives) / double(a.true_negatives + a.false_negatives)
                                     : 0.0;
    CHECK(b.precision == doctest::Approx(neg_precision));
    for (double v : {a.precision, a.recall, a.f1}) CHECK((v >= 0.0 && v <= 1.0));
  }
}

TEST_CASE("pooled reports") {
  EvalReport a = frame_f1(Decisions{B, B, N}, Decisions{B, N, N});
  a += frame_f1(Decisions{N, B}, Decisions{B, B});
  a.finalize();
  CHECK(a.total() == 5);
  CHECK(a.true_positives == 2);
  CHECK(a.precision == doctest::Approx(2.0 / 3.0));
  CHECK(a.recall == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("quantile") {
  CHECK(quantile({3, 1, 2}, 0.5) == 2.0);
  CHECK(quantile({1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(quantile({1, 2, 3, 4}, 1.0) == 4.0);
  CHECK(quantile({1, 2, 3, 4}, 0.0) == 1.0);
}

TEST_CASE("energy baseline examples") {
  const int sr = 44100, hop = 441;
  SUBCASE("silence-padded burst") {
    AudioClip c;
    c.samples.assign(static_cast<std::size_t>(hop * 40), 0.0);
    for (int i = hop * 10; i < hop * 20; ++i) c.samples[static_cast<std::size_t>(i)] = 0.5 * std::sin(2.0 * 3.14159265358979 * 1000.0 * i / sr);
    const Decisions d = baseline_energy(c, StftParams{}, 0.5);
    for (std::size_t k = 0; k < d.size(); ++k) {
      INFO("frame " << k);
      CHECK((d[k] == B) == (k >= 9 && k <= 19));
    }
  }
  SUBCASE("stationary noise splits by quantile") {
    const AudioClip noise = generate_noise(NoiseKind::White, static_cast<std::size_t>(sr * 5), sr, 2);
    for (double q : {0.3, 0.7}) {
      const Decisions d = baseline_energy(noise, StftParams{}, q);
      const double frac = double(std::count(d.begin(), d.end(), B)) / double(d.size());
      CHECK(frac == doctest::Approx(1.0 - q).epsilon(0.01).scale(1.0));
    }
    const Decisions none = baseline_energy(noise, StftParams{}, 1.0);
    CHECK(std::count(none.begin(), none.end(), B) == 0);
  }
  SUBCASE("constant signal has no frame strictly above the threshold") {
    AudioClip dc;
    dc.samples.assign(static_cast<std::size_t>(sr), 0.25);
    const Decisions d = baseline_energy(dc, StftParams{}, 0.5);
    CHECK(std::count(d.begin(), d.end(), B) == 0);
  }
  SUBCASE("too short") {
    AudioClip tiny;
    tiny.samples.assign(100, 0.1);
    expect_error(ErrorCode::ClipTooShort, [&] { baseline_energy(tiny, StftParams{}, 0.5); });
  }
}

TEST_CASE("snr sweep shape and CSV") {
  SynthSpec spec;
  spec.clip_count = 2;
  spec.duration_s = 4.0;
  spec.event_count = 4;
  spec.seed = 77;
  const auto corpus = test::synth_items(spec, true);
  const std::vector<NoiseSource> noises{{"white", generate_noise(NoiseKind::White, 44100, 44100, 1)},
                                        {"rain", generate_noise(NoiseKind::Rain, 44100, 44100, 2)}};
  const auto dict = test::trained_dictionary();
  const std::vector<double> snrs{20.0};
  const auto rows = snr_sweep(corpus, noises, snrs, dict, PipelineParams{});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].noise == "white");
  CHECK(rows[0].method == "pipeline");
  CHECK(rows[1].method == "energy");
  CHECK(rows[2].noise == "rain");
  for (const auto &r : rows) {
    CHECK(r.snr_db == 20.0);
    CHECK(r.pooled.total() > 0);
  }
  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("noise,snr_db,method,precision,recall,f1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  expect_error(ErrorCode::InvalidArgument, [&] { snr_sweep({}, noises, snrs, dict, PipelineParams{}); });
  expect_error(ErrorCode::InvalidArgument, [&] { snr_sweep(corpus, noises, {}, dict, PipelineParams{}); });
}

TEST_CASE("train_dictionary rejects unlabeled input") {
  auto items = test::synth_items(test::training_spec());
  for (auto &i : items) i.truth.intervals.clear();
  expect_error(ErrorCode::NoVocalizationFrames, [&] { train_dictionary(items, PipelineParams{}, movmf::EmConfig{}, 10); });
  auto mixed = test::synth_items(test::training_spec());
  mixed[1].clip.sample_rate = 22050;
  expect_error(ErrorCode::SampleRateMismatch, [&] { train_dictionary(mixed, PipelineParams{}, movmf::EmConfig{}, 10); });
}
