// include/dirseg/plot.hpp

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

#include <filesystem>
#include <string>

#include "dirseg/pipeline.hpp"
#include "dirseg/spectral.hpp"

namespace dirseg {

// Standalone SVG with three stacked panels sharing the frame axis: log-magnitude
// spectrogram heatmap, MI curve with the auto-labeled frames marked, and the
// smoothed decision train.
std::string segmentation_svg(const Spectrogram &spec, const SegmentationResult &result);
void write_segmentation_svg(const Spectrogram &spec, const SegmentationResult &result,
                            const std::filesystem::path &path);

}  // namespace dirseg
