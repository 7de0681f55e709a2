// src/config.cpp

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

#include "dirseg/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "dirseg/errors.hpp"

namespace dirseg {

using nlohmann::json;

void Config::apply_seed(std::uint64_t seed) {
  em.seed = seed;
  pipeline.svm.seed = seed;
}

void Config::validate() const {
  pipeline.validate();
  em.validate();
  if (keep < 1 || keep > em.num_components)
    throw Error(ErrorCode::KeepOutOfRange, fmt::format("keep {} outside [1, {}]", keep, em.num_components));
  if (!(sweep.baseline_quantile >= 0.0 && sweep.baseline_quantile <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "eval.baseline_quantile must lie in [0, 1]");
  if (threads < 0) throw Error(ErrorCode::InvalidArgument, "threads must be >= 0");
}

namespace {

// Reads known keys of one JSON object and rejects the rest.
class Section {
 public:
  Section(const json &obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw Error(ErrorCode::ParseError, fmt::format("'{}' must be an object", label()));
  }

  template <class T>
  void read(const char *key, T &out) {
    known_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception &) {
      throw Error(ErrorCode::ParseError, fmt::format("'{}' has the wrong type", dotted(key)));
    }
  }

  const json *child(const char *key) {
    known_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string dotted(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!known_.count(it.key())) throw Error(ErrorCode::UnknownKey, fmt::format("unknown config key '{}'", dotted(it.key())));
  }

 private:
  std::string label() const { return path_.empty() ? "<root>" : path_; }

  const json &obj_;
  std::string path_;
  std::set<std::string> known_;
};

}  // namespace

Config config_from_json(const std::string &text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
  Config cfg;
  Section top(root, "");
  if (const json *j = top.child("stft")) {
    Section s(*j, "stft");
    std::string window = to_string(cfg.pipeline.stft.window);
    s.read("frame_ms", cfg.pipeline.stft.frame_ms);
    s.read("overlap", cfg.pipeline.stft.overlap);
    s.read("fft_size", cfg.pipeline.stft.fft_size);
    s.read("window", window);
    s.finish();
    cfg.pipeline.stft.window = parse_window_kind(window);
  }
  if (const json *j = top.child("pipeline")) {
    Section s(*j, "pipeline");
    PipelineParams &p = cfg.pipeline;
    std::string feature = to_string(p.feature);
    s.read("w", p.w);
    s.read("q", p.q);
    s.read("mi_bins", p.mi_bins);
    s.read("mi_min_contrast", p.mi_min_contrast);
    s.read("median_len", p.median_len);
    s.read("min_segment_ms", p.min_segment_ms);
    s.read("merge_gap_ms", p.merge_gap_ms);
    s.read("feature_for_svm", feature);
    s.read("eps_rel", p.eps_rel);
    s.finish();
    p.feature = parse_svm_feature(feature);
  }
  if (const json *j = top.child("svm")) {
    Section s(*j, "svm");
    svm::SvmParams &p = cfg.pipeline.svm;
    s.read("C", p.C);
    s.read("degree", p.kernel.degree);
    s.read("gamma", p.kernel.gamma);
    s.read("coef0", p.kernel.coef0);
    s.read("tol", p.tol);
    s.read("max_iter", p.max_iter);
    s.read("seed", p.seed);
    s.finish();
  }
  if (const json *j = top.child("movmf")) {
    Section s(*j, "movmf");
    movmf::EmConfig &e = cfg.em;
    s.read("num_components", e.num_components);
    s.read("keep", cfg.keep);
    s.read("max_iters", e.max_iters);
    s.read("rel_tol", e.rel_tol);
    s.read("seed", e.seed);
    s.read("kappa_max", e.kappa_max);
    s.read("kappa_init", e.kappa_init);
    s.read("min_resp_mass", e.min_resp_mass);
    s.read("refine_kappa", e.refine_kappa);
    s.finish();
  }
  if (const json *j = top.child("eval")) {
    Section s(*j, "eval");
    s.read("baseline_quantile", cfg.sweep.baseline_quantile);
    s.finish();
  }
  if (const json *j = top.child("seed")) {
    if (!j->is_number_unsigned()) throw Error(ErrorCode::ParseError, "'seed' must be a non-negative integer");
    cfg.apply_seed(j->get<std::uint64_t>());
  }
  top.read("threads", cfg.threads);
  top.finish();
  cfg.validate();
  return cfg;
}

Config load_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const Config &cfg) {
  const PipelineParams &p = cfg.pipeline;
  json j;
  j["stft"] = {{"frame_ms", p.stft.frame_ms},
               {"overlap", p.stft.overlap},
               {"fft_size", p.stft.fft_size},
               {"window", to_string(p.stft.window)}};
  j["pipeline"] = {{"w", p.w},
                   {"q", p.q},
                   {"mi_bins", p.mi_bins},
                   {"mi_min_contrast", p.mi_min_contrast},
                   {"median_len", p.median_len},
                   {"min_segment_ms", p.min_segment_ms},
                   {"merge_gap_ms", p.merge_gap_ms},
                   {"feature_for_svm", to_string(p.feature)},
                   {"eps_rel", p.eps_rel}};
  j["svm"] = {{"C", p.svm.C},
              {"degree", p.svm.kernel.degree},
              {"gamma", p.svm.kernel.gamma},
              {"coef0", p.svm.kernel.coef0},
              {"tol", p.svm.tol},
              {"max_iter", p.svm.max_iter},
              {"seed", p.svm.seed}};
  j["movmf"] = {{"num_components", cfg.em.num_components},
                {"keep", cfg.keep},
                {"max_iters", cfg.em.max_iters},
                {"rel_tol", cfg.em.rel_tol},
                {"seed", cfg.em.seed},
                {"kappa_max", cfg.em.kappa_max},
                {"kappa_init", cfg.em.kappa_init},
                {"min_resp_mass", cfg.em.min_resp_mass},
                {"refine_kappa", cfg.em.refine_kappa}};
  j["eval"] = {{"baseline_quantile", cfg.sweep.baseline_quantile}};
  j["threads"] = cfg.threads;
  return j.dump();
}

}  // namespace dirseg
