// src/synth.cpp

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
#include <numbers>
#include <random>

#include "dirseg/audio.hpp"
#include "dirseg/errors.hpp"

namespace dirseg {

namespace {

constexpr double kNoiseRms = 0.1;
constexpr double kMinGapS = 0.05;
constexpr double kRampS = 0.005;

void set_rms(std::vector<double> &x, double rms) {
  double p = 0.0;
  for (double v : x) p += v * v;
  p = std::sqrt(p / static_cast<double>(x.size()));
  if (p > 0.0)
    for (double &v : x) v *= rms / p;
}

// Paul Kellet's refined pink filter over white noise.
std::vector<double> pink(std::size_t n, std::mt19937_64 &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> out(n);
  double b0 = 0, b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0, b6 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = g(rng);
    b0 = 0.99886 * b0 + w * 0.0555179;
    b1 = 0.99332 * b1 + w * 0.0750759;
    b2 = 0.96900 * b2 + w * 0.1538520;
    b3 = 0.86650 * b3 + w * 0.3104856;
    b4 = 0.55000 * b4 + w * 0.5329522;
    b5 = -0.7616 * b5 - w * 0.0168980;
    out[i] = b0 + b1 + b2 + b3 + b4 + b5 + b6 + w * 0.5362;
    b6 = w * 0.115926;
  }
  return out;
}

// Rain-like texture: a pink bed plus sparse Poisson droplets with heavy-tailed
// amplitudes, each a short exponentially decaying resonance.
std::vector<double> rain(std::size_t n, int sample_rate, std::mt19937_64 &rng) {
  std::vector<double> out = pink(n, rng);
  set_rms(out, 0.5);
  const double rate_hz = 40.0;
  std::exponential_distribution<double> gap(rate_hz);
  std::uniform_real_distribution<double> freq(800.0, 9000.0);
  std::uniform_real_distribution<double> decay_ms(2.0, 12.0);
  std::uniform_real_distribution<double> log_amp(std::log(0.1), std::log(8.0));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  double t = gap(rng);
  const double dur = static_cast<double>(n) / sample_rate;
  while (t < dur) {
    const double f = freq(rng), tau = decay_ms(rng) * 1e-3, a = std::exp(log_amp(rng)),
                 ph = phase(rng);
    const auto start = static_cast<std::size_t>(t * sample_rate);
    const auto len = static_cast<std::size_t>(6.0 * tau * sample_rate);
    for (std::size_t k = 0; k < len && start + k < n; ++k) {
      const double s = static_cast<double>(k) / sample_rate;
      out[start + k] += a * std::exp(-s / tau) * std::sin(2.0 * std::numbers::pi * f * s + ph);
    }
    t += gap(rng);
  }
  return out;
}

double ramp(std::size_t k, std::size_t len, std::size_t ramp_len) {
  if (ramp_len == 0) return 1.0;
  const std::size_t edge = std::min(k, len - 1 - k);
  if (edge >= ramp_len) return 1.0;
  return 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(edge) / ramp_len);
}

void render_event(std::vector<double> &out, std::size_t start, std::size_t len, EventKind kind,
                  double f0, double f1, double amp, int sample_rate) {
  const auto ramp_len = std::min(static_cast<std::size_t>(kRampS * sample_rate), len / 2);
  const double T = static_cast<double>(len) / sample_rate;
  const double nyquist = 0.5 * sample_rate;
  for (std::size_t k = 0; k < len; ++k) {
    const double t = static_cast<double>(k) / sample_rate;
    double v = 0.0;
    switch (kind) {
      case EventKind::LinearChirp:
        v = std::sin(2.0 * std::numbers::pi * (f0 * t + 0.5 * (f1 - f0) * t * t / T));
        break;
      case EventKind::ToneBurst:
        v = std::sin(2.0 * std::numbers::pi * f0 * t);
        break;
      case EventKind::HarmonicStack: {
        double norm = 0.0;
        for (int h = 1; h <= 4; ++h) {
          if (h * f0 >= nyquist) break;
          v += std::sin(2.0 * std::numbers::pi * h * f0 * t) / h;
          norm += 1.0 / h;
        }
        v /= norm;
        break;
      }
    }
    out[start + k] += amp * ramp(k, len, ramp_len) * v;
  }
}

void validate(const SynthSpec &spec) {
  auto fail = [](const std::string &why) { throw Error(ErrorCode::InvalidSpec, why); };
  if (spec.sample_rate <= 0) fail("sample_rate must be positive");
  if (!(spec.duration_s > 0.0)) fail("duration_s must be positive");
  if (spec.event_count < 0) fail("event_count must be non-negative");
  if (spec.clip_count < 1) fail("clip_count must be >= 1");
  if (!(spec.freq_lo_hz > 0.0) || !(spec.freq_hi_hz >= spec.freq_lo_hz))
    fail("frequency range must satisfy 0 < lo <= hi");
  if (!(spec.freq_jitter >= 0.0 && spec.freq_jitter < 0.5)) fail("freq_jitter must lie in [0, 0.5)");
  if (spec.freq_hi_hz * (1.0 + spec.freq_jitter) >= 0.5 * spec.sample_rate)
    fail("frequency range must lie below Nyquist");
  if (!(spec.event_ms_lo > 0.0) || !(spec.event_ms_hi >= spec.event_ms_lo))
    fail("event duration range must satisfy 0 < lo <= hi");
  const double worst = spec.event_count * (spec.event_ms_hi * 1e-3 + kMinGapS) + kMinGapS;
  if (spec.event_count > 0 && worst > spec.duration_s)
    fail("events do not fit into the clip duration");
  if (spec.noise_kind == NoiseKind::Clip) {
    if (!spec.noise_clip) fail("noise kind 'clip' needs a noise clip");
    if (spec.noise_clip->sample_rate != spec.sample_rate) fail("noise clip sample rate differs");
    if (!(spec.noise_clip->mean_power() > 0.0)) fail("noise clip is silent");
  }
}

}  // namespace

AudioClip generate_noise(NoiseKind kind, std::size_t n_samples, int sample_rate,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AudioClip clip;
  clip.sample_rate = sample_rate;
  switch (kind) {
    case NoiseKind::White: {
      std::normal_distribution<double> g(0.0, 1.0);
      clip.samples.resize(n_samples);
      for (double &v : clip.samples) v = g(rng);
      break;
    }
    case NoiseKind::Pink:
      clip.samples = pink(n_samples, rng);
      break;
    case NoiseKind::Rain:
      clip.samples = rain(n_samples, sample_rate, rng);
      break;
    case NoiseKind::Clip:
      throw Error(ErrorCode::InvalidSpec, "clip noise is loaded, not generated");
  }
  set_rms(clip.samples, kNoiseRms);
  for (double &v : clip.samples) v = std::clamp(v, -1.0, 1.0);
  return clip;
}

std::vector<SynthItem> synth_corpus(const SynthSpec &spec) {
  validate(spec);
  std::mt19937_64 master(spec.seed);
  const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * spec.sample_rate));
  std::vector<SynthItem> corpus;
  corpus.reserve(static_cast<std::size_t>(spec.clip_count));

  for (int c = 0; c < spec.clip_count; ++c) {
    std::mt19937_64 rng(master());
    const std::uint64_t noise_seed = rng();
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SynthItem item;
    item.clean.sample_rate = spec.sample_rate;
    item.clean.samples.assign(n, 0.0);
    item.truth.recording_id = "synth_" + std::to_string(c);

    // Durations first, then spread the leftover time over the gaps.
    std::vector<std::size_t> lens(static_cast<std::size_t>(spec.event_count));
    for (auto &len : lens) {
      const double ms = spec.event_ms_lo + (spec.event_ms_hi - spec.event_ms_lo) * unit(rng);
      len = static_cast<std::size_t>(std::llround(ms * 1e-3 * spec.sample_rate));
    }
    const auto min_gap = static_cast<std::size_t>(kMinGapS * spec.sample_rate);
    std::size_t used = min_gap * (lens.size() + 1);
    for (auto len : lens) used += len;
    const std::size_t slack = n > used ? n - used : 0;
    std::vector<double> weights(lens.size() + 1);
    double wsum = 0.0;
    for (double &w : weights) {
      w = -std::log(1.0 - unit(rng));
      wsum += w;
    }

    std::size_t cursor = 0;
    for (std::size_t e = 0; e < lens.size(); ++e) {
      cursor += min_gap + static_cast<std::size_t>(std::floor(slack * weights[e] / wsum));
      // Every call follows the same contour, perturbed per event.
      auto jitter = [&] { return 1.0 + spec.freq_jitter * (2.0 * unit(rng) - 1.0); };
      double f0 = spec.freq_lo_hz * jitter();
      double f1 = spec.freq_hi_hz * jitter();
      if (spec.event_kind == EventKind::ToneBurst) f0 = 0.5 * (f0 + f1);
      const double amp = 0.3 + 0.4 * unit(rng);
      render_event(item.clean.samples, cursor, lens[e], spec.event_kind, f0, f1, amp,
                   spec.sample_rate);
      item.truth.intervals.push_back(
          {static_cast<double>(cursor) / spec.sample_rate,
           static_cast<double>(cursor + lens[e]) / spec.sample_rate});
      cursor += lens[e];
    }

    AudioClip noise = spec.noise_kind == NoiseKind::Clip
                          ? *spec.noise_clip
                          : generate_noise(spec.noise_kind, n, spec.sample_rate, noise_seed);
    if (spec.event_count > 0) {
      item.clip = mix_at_snr(item.clean, noise, spec.snr_db).clip;
    } else {
      item.clip.sample_rate = spec.sample_rate;
      item.clip.samples.resize(n);
      const double gain = spec.noise_rms / std::sqrt(noise.mean_power());
      for (std::size_t i = 0; i < n; ++i)
        item.clip.samples[i] = std::clamp(gain * noise.samples[i % noise.samples.size()], -1.0, 1.0);
    }
    corpus.push_back(std::move(item));
  }
  return corpus;
}

}  // namespace dirseg
