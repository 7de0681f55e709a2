// src/dictionary_io.cpp

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

#include "dirseg/dictionary_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "dirseg/errors.hpp"

namespace dirseg {

namespace {

std::string real(double v) { return fmt::format("{:.17g}", v); }

std::string quote(const std::string &s) { return nlohmann::json(s).dump(); }

template <typename T>
T field(const nlohmann::json &obj, const char *key) {
  if (!obj.contains(key)) throw Error(ErrorCode::ParseError, fmt::format("missing field '{}'", key));
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::ParseError, fmt::format("field '{}': {}", key, e.what()));
  }
}

}  // namespace

std::string dictionary_to_json(const movmf::DirectionDictionary &dict) {
  const auto &pv = dict.provenance;
  std::string out = "{\n";
  out += fmt::format("  \"format_version\": {},\n", dict.format_version);
  out += fmt::format("  \"wd\": {},\n  \"w\": {},\n  \"d\": {},\n", dict.dim(), pv.w, pv.d);
  out += fmt::format("  \"sample_rate\": {},\n", pv.sample_rate);
  out += fmt::format(
      "  \"stft\": {{\"frame_ms\": {}, \"overlap\": {}, \"fft_size\": {}, \"window\": {}}},\n",
      real(pv.stft.frame_ms), real(pv.stft.overlap), pv.stft.fft_size, quote(to_string(pv.stft.window)));
  out += "  \"atoms\": [\n";
  for (std::size_t j = 0; j < dict.size(); ++j) {
    out += "    [";
    auto atom = dict.atoms.col(j);
    for (std::size_t i = 0; i < atom.size(); ++i) out += (i ? ", " : "") + real(atom[i]);
    out += j + 1 < dict.size() ? "],\n" : "]\n";
  }
  out += "  ],\n";
  auto list = [](const std::vector<double> &v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + real(v[i]);
    return s + "]";
  };
  out += "  \"kappas\": " + list(dict.kappas) + ",\n";
  out += "  \"weights\": " + list(dict.weights) + ",\n";
  std::string files = "[";
  for (std::size_t i = 0; i < pv.training_files.size(); ++i)
    files += (i ? ", " : "") + quote(pv.training_files[i]);
  files += "]";
  out += fmt::format(
      "  \"training\": {{\"num_components\": {}, \"seed\": {}, \"frames\": {}, \"files\": {}}}\n",
      pv.num_components, pv.seed, pv.training_frames, files);
  out += "}\n";
  return out;
}

movmf::DirectionDictionary dictionary_from_json(const std::string &text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "dictionary must be a JSON object");
  const int version = field<int>(doc, "format_version");
  if (version != movmf::DirectionDictionary::kFormatVersion)
    throw Error(ErrorCode::VersionMismatch,
                fmt::format("format_version {} (expected {})", version,
                            movmf::DirectionDictionary::kFormatVersion));

  movmf::DirectionDictionary dict;
  auto &pv = dict.provenance;
  const auto wd = field<std::size_t>(doc, "wd");
  pv.w = field<int>(doc, "w");
  pv.d = field<int>(doc, "d");
  pv.sample_rate = field<int>(doc, "sample_rate");
  if (pv.w < 1 || pv.d < 1 || wd != static_cast<std::size_t>(pv.w) * static_cast<std::size_t>(pv.d))
    throw Error(ErrorCode::ParseError, fmt::format("wd {} != w {} * d {}", wd, pv.w, pv.d));
  if (!doc.contains("stft") || !doc.at("stft").is_object())
    throw Error(ErrorCode::ParseError, "missing object 'stft'");
  const auto &stft = doc.at("stft");
  pv.stft.frame_ms = field<double>(stft, "frame_ms");
  pv.stft.overlap = field<double>(stft, "overlap");
  pv.stft.fft_size = field<int>(stft, "fft_size");
  try {
    pv.stft.window = parse_window_kind(field<std::string>(stft, "window"));
  } catch (const Error &e) {
    throw Error(ErrorCode::ParseError, e.what());
  }

  const auto atoms = field<std::vector<std::vector<double>>>(doc, "atoms");
  dict.kappas = field<std::vector<double>>(doc, "kappas");
  dict.weights = field<std::vector<double>>(doc, "weights");
  if (atoms.empty()) throw Error(ErrorCode::ParseError, "dictionary has no atoms");
  if (dict.kappas.size() != atoms.size() || dict.weights.size() != atoms.size())
    throw Error(ErrorCode::ParseError, "atoms, kappas and weights differ in length");
  dict.atoms = Matrix(wd, atoms.size());
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (atoms[j].size() != wd)
      throw Error(ErrorCode::ParseError, fmt::format("atom {} has {} entries, expected {}", j, atoms[j].size(), wd));
    std::copy(atoms[j].begin(), atoms[j].end(), dict.atoms.col(j).begin());
    const double len = norm2(dict.atoms.col(j));
    if (std::abs(len - 1.0) > 1e-6)
      throw Error(ErrorCode::ParseError, fmt::format("atom {} has norm {}", j, len));
  }

  if (doc.contains("training")) {
    const auto &tr = doc.at("training");
    pv.num_components = tr.value("num_components", static_cast<int>(atoms.size()));
    pv.seed = tr.value("seed", std::uint64_t{0});
    pv.training_frames = tr.value("frames", std::size_t{0});
    pv.training_files = tr.value("files", std::vector<std::string>{});
  }
  return dict;
}

void save_dictionary(const movmf::DirectionDictionary &dict, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << dictionary_to_json(dict);
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

movmf::DirectionDictionary load_dictionary(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return dictionary_from_json(buf.str());
}

}  // namespace dirseg
