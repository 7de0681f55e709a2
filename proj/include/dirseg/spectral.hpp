// include/dirseg/spectral.hpp

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
#include <vector>

#include "dirseg/audio.hpp"
#include "dirseg/matrix.hpp"

namespace dirseg {

enum class WindowKind { Hann, Rectangular };

const char *to_string(WindowKind kind);
WindowKind parse_window_kind(const std::string &s);

struct StftParams {
  double frame_ms = 20.0;
  double overlap = 0.5;  // fraction of a frame shared with the next one, in [0, 1)
  int fft_size = 1024;
  WindowKind window = WindowKind::Hann;

  int frame_length(int sample_rate) const;
  int hop_length(int sample_rate) const;
  int bins() const { return fft_size / 2 + 1; }
  void validate(int sample_rate) const;

  friend bool operator==(const StftParams &, const StftParams &) = default;
};

// Magnitude spectrogram, d = fft_size/2 + 1 rows by n frames.
struct Spectrogram {
  Matrix mags;
  StftParams params;
  int sample_rate = 44100;

  std::size_t bins() const { return mags.rows(); }
  std::size_t frames() const { return mags.cols(); }
  double hop_seconds() const;
  double frame_seconds() const;
};

std::vector<double> make_window(WindowKind kind, int length);

// n = floor((len - frame_len) / hop) + 1 frames; shorter clips throw ClipTooShort.
Spectrogram stft_magnitude(const AudioClip &clip, const StftParams &params);

// w*d x K matrix of stacked context windows (K = n). unit_flags marks columns
// that were successfully scaled onto the unit hypersphere.
struct SuperFrameMatrix {
  Matrix data;
  int w = 1;
  int d = 0;
  std::vector<std::uint8_t> unit_flags;

  std::size_t dim() const { return data.rows(); }
  std::size_t count() const { return data.cols(); }
};

// Column k stacks frames k-(w-1)/2 .. k+(w-1)/2; out-of-range frames repeat the
// nearest edge frame. unit_flags start out all zero.
SuperFrameMatrix superframes(const Spectrogram &spec, int w);

// Columns with norm > eps are scaled to norm 1 (flag 1); the rest are zeroed.
SuperFrameMatrix unit_normalize(SuperFrameMatrix m, double eps);

// eps used by the pipeline: rel times the largest column norm.
double relative_eps(const SuperFrameMatrix &m, double rel = 1e-12);

// One frame per line, bins comma separated.
void write_spectrogram_csv(const Spectrogram &spec, const std::filesystem::path &path);

}  // namespace dirseg
