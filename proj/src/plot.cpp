// src/plot.cpp

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

#include "dirseg/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "dirseg/errors.hpp"

namespace dirseg {

namespace {

constexpr double kWidth = 1000.0;
constexpr double kMargin = 50.0;
constexpr double kSpecH = 220.0;
constexpr double kMiH = 160.0;
constexpr double kDecH = 60.0;
constexpr double kGap = 30.0;
constexpr std::size_t kMaxCols = 600;
constexpr std::size_t kMaxRows = 128;

double plot_w() { return kWidth - 2.0 * kMargin; }

void heatmap(std::string &svg, const Spectrogram &spec, double top) {
  const std::size_t n = spec.frames(), d = spec.bins();
  const std::size_t cols = std::min(n, kMaxCols), rows = std::min(d, kMaxRows);
  std::vector<double> cell(cols * rows, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t c = k * cols / n, r = b * rows / d;
      cell[c * rows + r] = std::max(cell[c * rows + r], spec.mags(b, k));
    }
  double hi = -1e300;
  for (double &v : cell) {
    v = 20.0 * std::log10(v + 1e-12);
    hi = std::max(hi, v);
  }
  const double lo = hi - 80.0;
  const double cw = plot_w() / static_cast<double>(cols), rh = kSpecH / static_cast<double>(rows);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) {
      const double t = std::clamp((cell[c * rows + r] - lo) / (hi - lo), 0.0, 1.0);
      const int g = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      svg += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="#{:02x}{:02x}{:02x}"/>)",
                         kMargin + c * cw, top + kSpecH - (r + 1) * rh, cw + 0.05, rh + 0.05, g, g, g);
      svg += '\n';
    }
  svg += fmt::format(R"(<text x="{}" y="{}" font-size="12">spectrogram (0 to {:.0f} Hz)</text>)", kMargin, top - 6,
                     spec.sample_rate / 2.0);
  svg += '\n';
}

}  // namespace

std::string segmentation_svg(const Spectrogram &spec, const SegmentationResult &result) {
  const std::size_t n = result.frame_decisions.size();
  const double height = 2.0 * kMargin + kSpecH + kMiH + kDecH + 2.0 * kGap;
  std::string svg = fmt::format(
      R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">)"
      "\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, height, kWidth, height);
  auto x_of = [&](std::size_t k) {
    return kMargin + (n > 1 ? plot_w() * static_cast<double>(k) / static_cast<double>(n - 1) : 0.0);
  };

  double top = kMargin;
  if (spec.frames() > 0) heatmap(svg, spec, top);

  top += kSpecH + kGap;
  const auto &mi = result.mi_curve.values;
  if (!mi.empty()) {
    const auto [mn, mx] = std::minmax_element(mi.begin(), mi.end());
    const double span = *mx - *mn > 0.0 ? *mx - *mn : 1.0;
    auto y_of = [&](double v) { return top + kMiH - kMiH * (v - *mn) / span; };
    svg += R"(<polyline fill="none" stroke="black" stroke-width="0.8" points=")";
    for (std::size_t k = 0; k < mi.size(); ++k) svg += fmt::format("{:.2f},{:.2f} ", x_of(k), y_of(mi[k]));
    svg += "\"/>\n";
    for (std::size_t k : result.labels.positive_indices)
      svg += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="1.6" fill="red"/>)" "\n", x_of(k), y_of(mi[k]));
    for (std::size_t k : result.labels.negative_indices)
      svg += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="1.6" fill="blue"/>)" "\n", x_of(k), y_of(mi[k]));
    svg += fmt::format(R"(<text x="{}" y="{}" font-size="12">MI (bits, {:.3f} to {:.3f}); red: bird labels, blue: background labels</text>)"
                       "\n",
                       kMargin, top - 6, *mn, *mx);
  }

  top += kMiH + kGap;
  svg += fmt::format(R"(<text x="{}" y="{}" font-size="12">decisions</text>)" "\n", kMargin, top - 6);
  svg += fmt::format(R"(<polyline fill="none" stroke="darkgreen" stroke-width="1" points=")");
  for (std::size_t k = 0; k < n; ++k) {
    const double y = top + (result.frame_decisions[k] == Label::Bird ? 0.0 : kDecH);
    svg += fmt::format("{:.2f},{:.2f} ", x_of(k), y);
  }
  svg += "\"/>\n";
  svg += fmt::format(R"(<text x="{}" y="{}" font-size="12">time: 0 to {:.2f} s</text>)" "\n", kMargin,
                     top + kDecH + 20.0, static_cast<double>(n) * result.hop_s);
  svg += "</svg>\n";
  return svg;
}

void write_segmentation_svg(const Spectrogram &spec, const SegmentationResult &result,
                            const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << segmentation_svg(spec, result);
}

}  // namespace dirseg
