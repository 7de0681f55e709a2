// include/dirseg/dictionary_io.hpp

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

#include "dirseg/movmf.hpp"

namespace dirseg {

// Versioned JSON document:
// {format_version, wd, w, d, sample_rate,
//  stft: {frame_ms, overlap, fft_size, window},
//  atoms: [[...], ...] (one row per atom), kappas, weights,
//  training: {num_components, seed, frames, files}}
// Reals are written with 17 significant digits so a load reproduces the
// dictionary bit for bit.
std::string dictionary_to_json(const movmf::DirectionDictionary &dict);
movmf::DirectionDictionary dictionary_from_json(const std::string &text);

void save_dictionary(const movmf::DirectionDictionary &dict, const std::filesystem::path &path);
movmf::DirectionDictionary load_dictionary(const std::filesystem::path &path);

}  // namespace dirseg
