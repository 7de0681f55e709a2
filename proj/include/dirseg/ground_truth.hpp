// include/dirseg/ground_truth.hpp

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
#include <string>
#include <vector>

namespace dirseg {

enum class Label : std::uint8_t { Background = 0, Bird = 1 };

using Decisions = std::vector<Label>;

struct Interval {
  double onset_s = 0.0;
  double offset_s = 0.0;

  double duration() const { return offset_s - onset_s; }
  friend bool operator==(const Interval &, const Interval &) = default;
};

// Sorted, disjoint vocalization intervals of one recording.
struct GroundTruth {
  std::vector<Interval> intervals;
  std::string recording_id;

  double total_duration() const;
  friend bool operator==(const GroundTruth &, const GroundTruth &) = default;
};

}  // namespace dirseg
