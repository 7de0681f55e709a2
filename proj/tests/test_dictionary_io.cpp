// tests/test_dictionary_io.cpp

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

#include <cstring>
#include <fstream>

#include "dirseg/dictionary_io.hpp"
#include "test_support.hpp"

using namespace dirseg;
using dirseg::test::expect_error;

namespace {

movmf::DirectionDictionary sample_dictionary() {
  movmf::DirectionDictionary d;
  d.atoms = test::random_unit_columns(15, 4, 42);
  d.kappas = {1234.5678901234567, 88.1, 3.0e-7, 0.1};
  d.weights = {0.1, 0.2, 0.3, 0.4};
  d.provenance.w = 3;
  d.provenance.d = 5;
  d.provenance.sample_rate = 22050;
  d.provenance.stft.frame_ms = 23.3;
  d.provenance.stft.fft_size = 8;
  d.provenance.stft.window = WindowKind::Rectangular;
  d.provenance.num_components = 6;
  d.provenance.seed = 987654321;
  d.provenance.training_frames = 77;
  d.provenance.training_files = {"a.wav", "b \"quoted\".wav"};
  return d;
}

std::string replace(std::string s, const std::string &from, const std::string &to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("dictionary round trip is bit faithful") {
  const auto d = sample_dictionary();
  const auto path = test::scratch_dir("dictio") / "dict.json";
  save_dictionary(d, path);
  const auto back = load_dictionary(path);
  REQUIRE(back.atoms.rows() == d.atoms.rows());
  REQUIRE(back.atoms.cols() == d.atoms.cols());
  CHECK(std::memcmp(back.atoms.data(), d.atoms.data(), sizeof(double) * d.atoms.rows() * d.atoms.cols()) == 0);
  CHECK(back.kappas == d.kappas);
  CHECK(back.weights == d.weights);
  CHECK(back.provenance.stft == d.provenance.stft);
  CHECK(back.provenance.w == 3);
  CHECK(back.provenance.d == 5);
  CHECK(back.provenance.sample_rate == 22050);
  CHECK(back.provenance.seed == 987654321);
  CHECK(back.provenance.training_files == d.provenance.training_files);
  CHECK(dictionary_to_json(back) == dictionary_to_json(d));
}

TEST_CASE("dictionary parse errors") {
  const std::string good = dictionary_to_json(sample_dictionary());
  expect_error(ErrorCode::VersionMismatch,
               [&] { dictionary_from_json(replace(good, "\"format_version\": 1", "\"format_version\": 2")); });
  expect_error(ErrorCode::ParseError, [&] { dictionary_from_json(good.substr(0, good.size() / 2)); });
  expect_error(ErrorCode::ParseError, [&] { dictionary_from_json("[1, 2]"); });
  expect_error(ErrorCode::ParseError, [&] { dictionary_from_json(replace(good, "\"wd\": 15", "\"wd\": 16")); });
  expect_error(ErrorCode::ParseError, [&] { dictionary_from_json(replace(good, "\"window\": \"rectangular\"", "\"window\": \"boxcar\"")); });
  expect_error(ErrorCode::ParseError, [&] { dictionary_from_json(replace(good, "\"kappas\": [", "\"kappas\": [1, ")); });
  expect_error(ErrorCode::IoFailure, [&] { load_dictionary(test::scratch_dir("dictio_missing") / "none.json"); });
}

TEST_CASE("atoms that are not unit norm are rejected") {
  auto d = sample_dictionary();
  d.atoms(0, 0) += 0.5;
  expect_error(ErrorCode::ParseError, [&] { dictionary_from_json(dictionary_to_json(d)); });
}
