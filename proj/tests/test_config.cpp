// tests/test_config.cpp

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

#include <fstream>

#include "dirseg/config.hpp"
#include "test_support.hpp"

using namespace dirseg;
using dirseg::test::expect_error;

TEST_CASE("defaults match the reference regime") {
  const Config c;
  CHECK(c.pipeline.stft.frame_ms == 20.0);
  CHECK(c.pipeline.stft.overlap == 0.5);
  CHECK(c.pipeline.stft.fft_size == 1024);
  CHECK(c.pipeline.stft.window == WindowKind::Hann);
  CHECK(c.pipeline.w == 5);
  CHECK(c.pipeline.q == 2000);
  CHECK(c.pipeline.mi_bins == 16);
  CHECK(c.pipeline.median_len == 5);
  CHECK(c.pipeline.min_segment_ms == 30.0);
  CHECK(c.pipeline.merge_gap_ms == 20.0);
  CHECK(c.pipeline.feature == SvmFeature::Raw);
  CHECK(c.pipeline.svm.C == 1.0);
  CHECK(c.pipeline.svm.kernel.degree == 3);
  CHECK(c.em.num_components == 15);
  CHECK(c.em.kappa_max == 1e5);
  CHECK(c.keep == 10);
  CHECK_NOTHROW(c.validate());
  CHECK_NOTHROW(config_from_json("{}").validate());
}

TEST_CASE("config JSON round trip") {
  Config c;
  c.pipeline.q = 123;
  c.pipeline.stft.fft_size = 2048;
  c.pipeline.feature = SvmFeature::Softmax;
  c.em.num_components = 7;
  c.keep = 4;
  c.sweep.baseline_quantile = 0.6;
  c.apply_seed(99);
  const Config back = config_from_json(config_to_json(c));
  CHECK(back.pipeline.q == 123);
  CHECK(back.pipeline.stft.fft_size == 2048);
  CHECK(back.pipeline.feature == SvmFeature::Softmax);
  CHECK(back.em.num_components == 7);
  CHECK(back.em.seed == 99);
  CHECK(back.pipeline.svm.seed == c.pipeline.svm.seed);
  CHECK(back.keep == 4);
  CHECK(back.sweep.baseline_quantile == 0.6);
  CHECK(config_to_json(back) == config_to_json(c));
}

TEST_CASE("unknown keys are rejected by name") {
  try {
    config_from_json(R"({"pipeline": {"q": 10, "qq": 3}})");
    FAIL("expected UnknownKey");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::UnknownKey);
    CHECK(std::string(e.what()).find("pipeline.qq") != std::string::npos);
  }
  expect_error(ErrorCode::UnknownKey, [] { config_from_json(R"({"colour": 1})"); });
  expect_error(ErrorCode::ParseError, [] { config_from_json(R"({"pipeline": {"q": "many"}})"); });
  expect_error(ErrorCode::ParseError, [] { config_from_json("{"); });
  expect_error(ErrorCode::ParseError, [] { config_from_json(R"({"seed": -4})"); });
}

TEST_CASE("invalid values fail validation") {
  expect_error(ErrorCode::KeepOutOfRange, [] { config_from_json(R"({"movmf": {"num_components": 5, "keep": 6}})").validate(); });
  CHECK_THROWS_AS(config_from_json(R"({"pipeline": {"median_len": 4}})").validate(), Error);
  CHECK_THROWS_AS(config_from_json(R"({"eval": {"baseline_quantile": 1.5}})").validate(), Error);
}

TEST_CASE("config file loading") {
  const auto path = test::scratch_dir("config") / "c.json";
  std::ofstream(path) << R"({"seed": 5, "threads": 2, "stft": {"window": "rectangular"}})";
  const Config c = load_config(path);
  CHECK(c.em.seed == 5);
  CHECK(c.threads == 2);
  CHECK(c.pipeline.stft.window == WindowKind::Rectangular);
  expect_error(ErrorCode::IoFailure, [&] { load_config(path.parent_path() / "none.json"); });
}
