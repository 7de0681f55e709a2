// src/audio.cpp

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

#include "dirseg/audio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "dirseg/errors.hpp"

namespace dirseg {

double GroundTruth::total_duration() const {
  double total = 0.0;
  for (const auto &iv : intervals) total += iv.duration();
  return total;
}

double AudioClip::mean_power() const {
  if (samples.empty()) return 0.0;
  double s = 0.0;
  for (double x : samples) s += x * x;
  return s / static_cast<double>(samples.size());
}

AudioClip AudioClip::scaled(double gain) const {
  AudioClip out{samples, sample_rate};
  for (double &x : out.samples) x *= gain;
  return out;
}

namespace {

std::uint32_t le32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put32(std::vector<unsigned char> &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void put16(std::vector<unsigned char> &out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

AudioClip read_wav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  const std::string where = path.string();
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(ErrorCode::CorruptHeader, where + ": not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    const std::uint32_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size())
        throw Error(ErrorCode::CorruptHeader, where + ": truncated fmt chunk");
      std::uint16_t format = le16(bytes.data() + body);
      channels = le16(bytes.data() + body + 2);
      rate = le32(bytes.data() + body + 4);
      bits = le16(bytes.data() + body + 14);
      if (format == kFormatExtensible && size >= 40) format = le16(bytes.data() + body + 24);
      if (format != kFormatPcm)
        throw Error(ErrorCode::UnsupportedFormat, where + ": only PCM is supported");
      if (channels != 1)
        throw Error(ErrorCode::UnsupportedFormat,
                    where + ": expected mono, got " + std::to_string(channels) + " channels");
      if (bits != 16)
        throw Error(ErrorCode::UnsupportedFormat,
                    where + ": expected 16-bit samples, got " + std::to_string(bits));
      if (rate == 0) throw Error(ErrorCode::CorruptHeader, where + ": zero sample rate");
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw Error(ErrorCode::CorruptHeader, where + ": data chunk before fmt");
      if (body + size > bytes.size())
        throw Error(ErrorCode::CorruptHeader, where + ": truncated data chunk");
      AudioClip clip;
      clip.sample_rate = static_cast<int>(rate);
      clip.samples.resize(size / 2);
      for (std::size_t i = 0; i < clip.samples.size(); ++i) {
        const auto v = static_cast<std::int16_t>(le16(bytes.data() + body + 2 * i));
        clip.samples[i] = v / 32768.0;
      }
      return clip;
    }
    pos = body + size + (size & 1u);
  }
  throw Error(ErrorCode::CorruptHeader, where + (have_fmt ? ": no data chunk" : ": no fmt chunk"));
}

void write_wav(const AudioClip &clip, const std::filesystem::path &path) {
  const auto n = static_cast<std::uint32_t>(clip.samples.size());
  std::vector<unsigned char> out;
  out.reserve(44 + 2 * static_cast<std::size_t>(n));
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put32(out, 36 + 2 * n);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put32(out, 16);
  put16(out, kFormatPcm);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(clip.sample_rate));
  put32(out, static_cast<std::uint32_t>(clip.sample_rate) * 2);
  put16(out, 2);
  put16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put32(out, 2 * n);
  for (double x : clip.samples) {
    const double q = std::clamp(std::round(x * 32768.0), -32768.0, 32767.0);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  f.write(reinterpret_cast<const char *>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

double snr_db(const std::vector<double> &a, const std::vector<double> &b) {
  double pa = 0.0, pb = 0.0;
  for (double x : a) pa += x * x;
  for (double x : b) pb += x * x;
  pa /= static_cast<double>(a.size());
  pb /= static_cast<double>(b.size());
  return 10.0 * std::log10(pa / pb);
}

MixResult mix_at_snr(const AudioClip &signal, const AudioClip &noise, double target_db) {
  if (signal.sample_rate != noise.sample_rate)
    throw Error(ErrorCode::SampleRateMismatch,
                std::to_string(signal.sample_rate) + " Hz vs " + std::to_string(noise.sample_rate) + " Hz");
  const double ps = signal.mean_power();
  if (!(ps > 0.0)) throw Error(ErrorCode::SilentInput, "signal has zero power");
  if (noise.samples.empty() || !(noise.mean_power() > 0.0))
    throw Error(ErrorCode::SilentInput, "noise has zero power");

  const std::size_t n = signal.samples.size();
  std::vector<double> looped(n);
  for (std::size_t i = 0; i < n; ++i) looped[i] = noise.samples[i % noise.samples.size()];
  double pn = 0.0;
  for (double x : looped) pn += x * x;
  pn /= static_cast<double>(n);
  if (!(pn > 0.0)) throw Error(ErrorCode::SilentInput, "noise segment has zero power");

  MixResult result;
  result.noise_gain = std::sqrt(ps / (pn * std::pow(10.0, target_db / 10.0)));
  result.clip.sample_rate = signal.sample_rate;
  result.clip.samples.resize(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = signal.samples[i] + result.noise_gain * looped[i];
    result.clip.samples[i] = v;
    peak = std::max(peak, std::abs(v));
  }
  if (peak > 1.0) {
    result.peak_rescale = 1.0 / peak;
    for (double &v : result.clip.samples) v *= result.peak_rescale;
  }
  return result;
}

const char *to_string(EventKind kind) {
  switch (kind) {
    case EventKind::LinearChirp: return "chirp";
    case EventKind::ToneBurst: return "tone";
    case EventKind::HarmonicStack: return "harmonic";
  }
  return "?";
}

const char *to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::White: return "white";
    case NoiseKind::Pink: return "pink";
    case NoiseKind::Rain: return "rain";
    case NoiseKind::Clip: return "clip";
  }
  return "?";
}

EventKind parse_event_kind(const std::string &s) {
  if (s == "chirp") return EventKind::LinearChirp;
  if (s == "tone") return EventKind::ToneBurst;
  if (s == "harmonic") return EventKind::HarmonicStack;
  throw Error(ErrorCode::InvalidSpec, "unknown event kind '" + s + "'");
}

NoiseKind parse_noise_kind(const std::string &s) {
  if (s == "white") return NoiseKind::White;
  if (s == "pink") return NoiseKind::Pink;
  if (s == "rain") return NoiseKind::Rain;
  if (s == "clip") return NoiseKind::Clip;
  throw Error(ErrorCode::InvalidSpec, "unknown noise kind '" + s + "'");
}

}  // namespace dirseg
