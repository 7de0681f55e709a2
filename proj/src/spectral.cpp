// src/spectral.cpp

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

#include "dirseg/spectral.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "dirseg/errors.hpp"
#include "dirseg/kernels.hpp"

namespace dirseg {

const char *to_string(WindowKind kind) {
  return kind == WindowKind::Hann ? "hann" : "rectangular";
}

WindowKind parse_window_kind(const std::string &s) {
  if (s == "hann") return WindowKind::Hann;
  if (s == "rectangular" || s == "rect") return WindowKind::Rectangular;
  throw Error(ErrorCode::InvalidArgument, "unknown window '" + s + "'");
}

int StftParams::frame_length(int sample_rate) const {
  return static_cast<int>(std::lround(frame_ms * 1e-3 * sample_rate));
}

int StftParams::hop_length(int sample_rate) const {
  return std::max(1, static_cast<int>(std::lround(frame_length(sample_rate) * (1.0 - overlap))));
}

void StftParams::validate(int sample_rate) const {
  if (!(frame_ms > 0.0)) throw Error(ErrorCode::InvalidArgument, "frame_ms must be positive");
  if (!(overlap >= 0.0 && overlap < 1.0))
    throw Error(ErrorCode::InvalidArgument, "overlap must lie in [0, 1)");
  if (fft_size < 2) throw Error(ErrorCode::InvalidArgument, "fft_size must be >= 2");
  const int len = frame_length(sample_rate);
  if (len < 1) throw Error(ErrorCode::InvalidArgument, "frame shorter than one sample");
  if (len > fft_size)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("frame of {} samples exceeds fft_size {}", len, fft_size));
}

double Spectrogram::hop_seconds() const {
  return static_cast<double>(params.hop_length(sample_rate)) / sample_rate;
}

double Spectrogram::frame_seconds() const {
  return static_cast<double>(params.frame_length(sample_rate)) / sample_rate;
}

std::vector<double> make_window(WindowKind kind, int length) {
  std::vector<double> w(static_cast<std::size_t>(length), 1.0);
  if (kind == WindowKind::Hann) {
    // periodic Hann
    for (int i = 0; i < length; ++i)
      w[static_cast<std::size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / length);
  }
  return w;
}

Spectrogram stft_magnitude(const AudioClip &clip, const StftParams &params) {
  params.validate(clip.sample_rate);
  const auto frame_len = static_cast<std::size_t>(params.frame_length(clip.sample_rate));
  const auto hop = static_cast<std::size_t>(params.hop_length(clip.sample_rate));
  if (clip.samples.size() < frame_len)
    throw Error(ErrorCode::ClipTooShort,
                fmt::format("{} samples, need at least one frame of {}", clip.samples.size(), frame_len));
  const std::size_t n = (clip.samples.size() - frame_len) / hop + 1;

  Spectrogram spec;
  spec.params = params;
  spec.sample_rate = clip.sample_rate;
  spec.mags = Matrix(static_cast<std::size_t>(params.bins()), n);
  const auto window = make_window(params.window, static_cast<int>(frame_len));
  kernels::parallel::stft_magnitudes(clip.samples, window, hop,
                                     static_cast<std::size_t>(params.fft_size), spec.mags);
  return spec;
}

SuperFrameMatrix superframes(const Spectrogram &spec, int w) {
  if (w < 1 || w % 2 == 0)
    throw Error(ErrorCode::InvalidArgument, fmt::format("context window must be odd and >= 1, got {}", w));
  if (spec.frames() == 0) throw Error(ErrorCode::EmptySpectrogram, "no frames");
  SuperFrameMatrix out;
  out.w = w;
  out.d = static_cast<int>(spec.bins());
  out.data = kernels::parallel::stack_context(spec.mags, static_cast<std::size_t>(w));
  out.unit_flags.assign(out.data.cols(), 0);
  return out;
}

SuperFrameMatrix unit_normalize(SuperFrameMatrix m, double eps) {
  m.unit_flags = kernels::parallel::normalize_columns(m.data, eps);
  return m;
}

double relative_eps(const SuperFrameMatrix &m, double rel) {
  double mx = 0.0;
  for (std::size_t c = 0; c < m.count(); ++c) mx = std::max(mx, norm2(m.data.col(c)));
  return rel * mx;
}

void write_spectrogram_csv(const Spectrogram &spec, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  for (std::size_t k = 0; k < spec.frames(); ++k) {
    auto col = spec.mags.col(k);
    for (std::size_t b = 0; b < col.size(); ++b) out << (b ? "," : "") << fmt::format("{:.9g}", col[b]);
    out << '\n';
  }
}

}  // namespace dirseg
