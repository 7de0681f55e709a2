// include/dirseg/audio.hpp

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
#include <optional>
#include <utility>
#include <vector>

#include "dirseg/ground_truth.hpp"

namespace dirseg {

// Mono audio with samples in [-1, 1].
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = 44100;

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  double mean_power() const;
  AudioClip scaled(double gain) const;
};

// 16-bit PCM mono RIFF/WAVE. Sample s maps to s / 32768.
AudioClip read_wav(const std::filesystem::path &path);
// Saturating quantization: 1.0 -> 32767.
void write_wav(const AudioClip &clip, const std::filesystem::path &path);

struct MixResult {
  AudioClip clip;
  double noise_gain = 1.0;    // gain applied to the (looped) noise
  double peak_rescale = 1.0;  // < 1 when the mix was scaled down to avoid clipping
};

// signal + g * noise with g chosen so that 10 log10(P_signal / (g^2 P_noise)) equals
// snr_db, P being mean power over the whole clip. Noise is looped or truncated to
// the signal length. If the mix peaks above 1 it is rescaled as a whole.
MixResult mix_at_snr(const AudioClip &signal, const AudioClip &noise, double snr_db);

// Measured 10 log10(P_a / P_b).
double snr_db(const std::vector<double> &a, const std::vector<double> &b);

enum class EventKind { LinearChirp, ToneBurst, HarmonicStack };
enum class NoiseKind { White, Pink, Rain, Clip };

const char *to_string(EventKind kind);
const char *to_string(NoiseKind kind);
EventKind parse_event_kind(const std::string &s);
NoiseKind parse_noise_kind(const std::string &s);

// Stationary or textured background noise with unit-ish level (RMS 0.1).
AudioClip generate_noise(NoiseKind kind, std::size_t n_samples, int sample_rate,
                         std::uint64_t seed);

struct SynthSpec {
  double duration_s = 10.0;
  int event_count = 8;
  EventKind event_kind = EventKind::LinearChirp;
  // Chirps sweep lo -> hi, tones sit at the centre, harmonic stacks use lo as the
  // fundamental. Each event scales both ends by 1 + freq_jitter * U(-1, 1).
  double freq_lo_hz = 3000.0;
  double freq_hi_hz = 3300.0;
  double freq_jitter = 0.02;
  double event_ms_lo = 250.0;
  double event_ms_hi = 500.0;
  NoiseKind noise_kind = NoiseKind::White;
  std::optional<AudioClip> noise_clip;  // required when noise_kind == Clip
  double snr_db = 30.0;      // event-to-noise ratio when events are present
  double noise_rms = 0.01;   // noise level of event-free clips
  int clip_count = 1;
  int sample_rate = 44100;
  std::uint64_t seed = 1;
};

struct SynthItem {
  AudioClip clip;         // events plus noise
  AudioClip clean;        // events only
  GroundTruth truth;
};

// Deterministic given spec.seed. Events never overlap and lie inside the clip.
std::vector<SynthItem> synth_corpus(const SynthSpec &spec);

}  // namespace dirseg
