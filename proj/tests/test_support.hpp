// tests/test_support.hpp

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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "dirseg/errors.hpp"
#include "dirseg/matrix.hpp"

namespace dirseg::test {

// Runs `fn` and checks that it throws dirseg::Error with the given code.
template <class Fn>
void expect_error(ErrorCode code, Fn &&fn) {
  bool thrown = false;
  try {
    fn();
  } catch (const Error &e) {
    thrown = true;
    CHECK_MESSAGE(e.code() == code, "got " << std::string(e.what()));
  }
  CHECK_MESSAGE(thrown, "expected " << to_string(code));
}

// Fresh per-test scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("dirseg_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline Matrix random_unit_columns(std::size_t dim, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(dim, n);
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0.0;
    for (auto &v : m.col(c)) {
      v = g(rng);
      s += v * v;
    }
    for (auto &v : m.col(c)) v /= std::sqrt(s);
  }
  return m;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace dirseg::test
