// src/kernel_common.hpp

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

#pragma once

#include <algorithm>
#include <cstddef>

namespace dirseg::detail {

inline double ipow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Index of the frame that feeds slot `offset` of super-frame `k`.
inline std::size_t context_source(std::size_t k, std::size_t offset, std::size_t half,
                                  std::size_t n) {
  const long src = static_cast<long>(k) + static_cast<long>(offset) - static_cast<long>(half);
  return static_cast<std::size_t>(std::clamp<long>(src, 0, static_cast<long>(n) - 1));
}

}  // namespace dirseg::detail
