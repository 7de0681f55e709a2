// tests/test_audio.cpp

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
#include <cstdint>
#include <fstream>
#include <numbers>

#include "dirseg/audio.hpp"
#include "test_support.hpp"

using namespace dirseg;
using dirseg::test::expect_error;

namespace {

void put16(std::ofstream &o, std::uint16_t v) { o.put(char(v & 0xff)).put(char(v >> 8)); }
void put32(std::ofstream &o, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) o.put(char((v >> (8 * i)) & 0xff));
}

// Hand-rolled PCM writer, independent of write_wav.
void raw_wav(const std::filesystem::path &p, int channels, int bits, int rate, const std::vector<std::int16_t> &data,
             std::uint16_t format = 1) {
  std::ofstream o(p, std::ios::binary);
  const std::uint32_t bytes = static_cast<std::uint32_t>(data.size() * 2);
  o.write("RIFF", 4);
  put32(o, 36 + bytes);
  o.write("WAVE", 4);
  o.write("fmt ", 4);
  put32(o, 16);
  put16(o, format);
  put16(o, static_cast<std::uint16_t>(channels));
  put32(o, static_cast<std::uint32_t>(rate));
  put32(o, static_cast<std::uint32_t>(rate * channels * bits / 8));
  put16(o, static_cast<std::uint16_t>(channels * bits / 8));
  put16(o, static_cast<std::uint16_t>(bits));
  o.write("data", 4);
  put32(o, bytes);
  for (auto s : data) put16(o, static_cast<std::uint16_t>(s));
}

AudioClip sine(double f, double amp, std::size_t n, int sr = 44100) {
  AudioClip c;
  c.sample_rate = sr;
  c.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.samples[i] = amp * std::sin(2 * std::numbers::pi * f * i / sr);
  return c;
}

}  // namespace

TEST_CASE("read_wav header arithmetic and sample scaling") {
  auto dir = test::scratch_dir("audio_read");
  std::vector<std::int16_t> data(44100, 0);
  data[0] = 16384;
  data[1] = -32768;
  raw_wav(dir / "a.wav", 1, 16, 44100, data);
  const AudioClip c = read_wav(dir / "a.wav");
  CHECK(c.samples.size() == 44100);
  CHECK(c.sample_rate == 44100);
  CHECK(c.duration_seconds() == doctest::Approx(1.0));
  CHECK(c.samples[0] == 0.5);
  CHECK(c.samples[1] == -1.0);
}

TEST_CASE("read_wav rejects unsupported and broken files") {
  auto dir = test::scratch_dir("audio_bad");
  raw_wav(dir / "stereo.wav", 2, 16, 44100, std::vector<std::int16_t>(20, 0));
  expect_error(ErrorCode::UnsupportedFormat, [&] { read_wav(dir / "stereo.wav"); });
  raw_wav(dir / "float.wav", 1, 16, 44100, std::vector<std::int16_t>(20, 0), 3);
  expect_error(ErrorCode::UnsupportedFormat, [&] { read_wav(dir / "float.wav"); });
  {
    std::ofstream o(dir / "junk.wav", std::ios::binary);
    o << "this is not a riff file at all";
  }
  expect_error(ErrorCode::CorruptHeader, [&] { read_wav(dir / "junk.wav"); });
  expect_error(ErrorCode::IoFailure, [&] { read_wav(dir / "missing.wav"); });
}

TEST_CASE("write_wav round trip, saturation and empty clips") {
  auto dir = test::scratch_dir("audio_write");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AudioClip c;
  c.sample_rate = 22050;
  for (int i = 0; i < 100; ++i) c.samples.push_back(u(rng));
  c.samples[0] = 1.0;
  write_wav(c, dir / "r.wav");
  const AudioClip back = read_wav(dir / "r.wav");
  REQUIRE(back.samples.size() == 100);
  CHECK(back.sample_rate == 22050);
  for (std::size_t i = 0; i < 100; ++i) CHECK(std::abs(back.samples[i] - c.samples[i]) <= 1.0 / 32768);
  CHECK(back.samples[0] == 32767.0 / 32768.0);

  AudioClip empty;
  write_wav(empty, dir / "e.wav");
  CHECK(read_wav(dir / "e.wav").samples.empty());
}

TEST_CASE("mix_at_snr gain follows the SNR definition") {
  const AudioClip s = sine(1000, 0.1, 4000);
  AudioClip n = s;
  std::reverse(n.samples.begin(), n.samples.end());
  SUBCASE("equal power, 0 dB") { CHECK(mix_at_snr(s, n, 0.0).noise_gain == doctest::Approx(1.0).epsilon(1e-12)); }
  SUBCASE("equal power, 10 dB") {
    CHECK(mix_at_snr(s, n, 10.0).noise_gain == doctest::Approx(std::pow(10.0, -0.5)).epsilon(1e-12));
  }
  SUBCASE("mismatched rates and silence") {
    AudioClip other = n;
    other.sample_rate = 16000;
    expect_error(ErrorCode::SampleRateMismatch, [&] { mix_at_snr(s, other, 0.0); });
    AudioClip silent = n;
    std::fill(silent.samples.begin(), silent.samples.end(), 0.0);
    expect_error(ErrorCode::SilentInput, [&] { mix_at_snr(s, silent, 0.0); });
    expect_error(ErrorCode::SilentInput, [&] { mix_at_snr(silent, n, 0.0); });
  }
}

TEST_CASE("mix_at_snr loops short noise and hits the target SNR for any level") {
  const AudioClip s = sine(440, 0.2, 10000);
  const AudioClip n = generate_noise(NoiseKind::Pink, 777, 44100, 3);
  for (double snr = -20.0; snr <= 40.0; snr += 7.5) {
    const MixResult m = mix_at_snr(s, n, snr);
    REQUIRE(m.clip.samples.size() == s.samples.size());
    // Recover the scaled noise from the output and re-measure.
    std::vector<double> sig(s.samples.size()), noise(s.samples.size());
    for (std::size_t i = 0; i < sig.size(); ++i) {
      sig[i] = s.samples[i] * m.peak_rescale;
      noise[i] = m.clip.samples[i] - sig[i];
      // Looped noise: sample i comes from noise index i mod 777.
      CHECK(noise[i] == doctest::Approx(m.noise_gain * m.peak_rescale * n.samples[i % 777]).epsilon(1e-9));
    }
    CHECK(snr_db(sig, noise) == doctest::Approx(snr).epsilon(1e-9));
    for (double v : m.clip.samples) CHECK(std::abs(v) <= 1.0);
  }
}

TEST_CASE("mix_at_snr rescales mixes that would clip") {
  const AudioClip s = sine(440, 0.9, 2000);
  const AudioClip n = generate_noise(NoiseKind::White, 2000, 44100, 4);
  const MixResult m = mix_at_snr(s, n, -10.0);
  CHECK(m.peak_rescale < 1.0);
  double peak = 0.0;
  for (double v : m.clip.samples) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(1.0));
}

TEST_CASE("synth_corpus is deterministic and places disjoint events") {
  SynthSpec spec;
  spec.clip_count = 3;
  spec.seed = 42;
  const auto a = synth_corpus(spec);
  const auto b = synth_corpus(spec);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].clip.samples == b[i].clip.samples);
    CHECK(a[i].truth == b[i].truth);
    const auto &iv = a[i].truth.intervals;
    CHECK(iv.size() == 8);
    for (std::size_t k = 0; k < iv.size(); ++k) {
      CHECK(iv[k].onset_s >= 0.0);
      CHECK(iv[k].offset_s <= spec.duration_s);
      CHECK(iv[k].offset_s > iv[k].onset_s);
      if (k > 0) CHECK(iv[k].onset_s >= iv[k - 1].offset_s);
    }
    for (double v : a[i].clip.samples) CHECK(std::abs(v) <= 1.0);
  }
  spec.seed = 43;
  CHECK(synth_corpus(spec)[0].clip.samples != a[0].clip.samples);
}

TEST_CASE("synth_corpus construction examples") {
  SynthSpec spec;
  spec.event_count = 5;
  spec.event_ms_lo = spec.event_ms_hi = 300.0;
  const auto c = synth_corpus(spec);
  CHECK(c[0].truth.intervals.size() == 5);
  CHECK(c[0].truth.total_duration() == doctest::Approx(1.5).epsilon(1e-4));
  // The clean track is silent outside the labels.
  const auto &clean = c[0].clean.samples;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double t = static_cast<double>(i) / spec.sample_rate;
    bool inside = false;
    for (const auto &iv : c[0].truth.intervals) inside |= t >= iv.onset_s && t < iv.offset_s;
    if (!inside) REQUIRE(clean[i] == 0.0);
  }

  spec.event_count = 0;
  const auto quiet = synth_corpus(spec);
  CHECK(quiet[0].truth.intervals.empty());
  CHECK(std::sqrt(quiet[0].clip.mean_power()) == doctest::Approx(spec.noise_rms).epsilon(1e-6));
}

TEST_CASE("synth_corpus validates its spec") {
  SynthSpec spec;
  spec.freq_hi_hz = 30000.0;
  expect_error(ErrorCode::InvalidSpec, [&] { synth_corpus(spec); });
  spec = {};
  spec.event_count = 40;
  expect_error(ErrorCode::InvalidSpec, [&] { synth_corpus(spec); });
  spec = {};
  spec.noise_kind = NoiseKind::Clip;
  expect_error(ErrorCode::InvalidSpec, [&] { synth_corpus(spec); });
  spec = {};
  spec.duration_s = -1.0;
  expect_error(ErrorCode::InvalidSpec, [&] { synth_corpus(spec); });
}

TEST_CASE("generated noise is reproducible and has the documented level") {
  for (auto kind : {NoiseKind::White, NoiseKind::Pink, NoiseKind::Rain}) {
    const AudioClip a = generate_noise(kind, 44100, 44100, 8);
    const AudioClip b = generate_noise(kind, 44100, 44100, 8);
    CHECK(a.samples == b.samples);
    CHECK(std::sqrt(a.mean_power()) == doctest::Approx(0.1).epsilon(1e-9));
  }
  CHECK(parse_noise_kind("rain") == NoiseKind::Rain);
  CHECK(parse_event_kind("harmonic") == EventKind::HarmonicStack);
  expect_error(ErrorCode::InvalidSpec, [] { parse_noise_kind("brown"); });
}
