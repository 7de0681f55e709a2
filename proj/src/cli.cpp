// src/cli.cpp

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

#include "dirseg/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "dirseg/audio.hpp"
#include "dirseg/config.hpp"
#include "dirseg/dictionary_io.hpp"
#include "dirseg/errors.hpp"
#include "dirseg/evalkit.hpp"
#include "dirseg/kernels.hpp"
#include "dirseg/labeling.hpp"
#include "dirseg/pipeline.hpp"
#include "dirseg/plot.hpp"
#include "dirseg/spectral.hpp"

namespace fs = std::filesystem;

namespace dirseg {

namespace {

constexpr std::uint64_t kDefaultSeed = 20190601;

// Flags shared by several subcommands; unset values leave the config alone.
struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> q;
  std::optional<int> mixtures;
  std::optional<int> keep;
  std::optional<int> window;
  std::optional<int> threads;

  Config resolve() const {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    if (seed) cfg.apply_seed(*seed);
    if (q) cfg.pipeline.q = *q;
    if (mixtures) cfg.em.num_components = *mixtures;
    if (keep) cfg.keep = *keep;
    if (window) cfg.pipeline.w = *window;
    if (threads) cfg.threads = *threads;
    cfg.validate();
    kernels::set_threads(cfg.threads);
    fmt::print(stderr, "{}\n", config_to_json(cfg));
    return cfg;
  }
};

void add_common(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "seed for every randomized stage");
  cmd->add_option("--threads", o.threads, "OpenMP threads (0: runtime default)");
}

void setup_logging() {
  auto logger = spdlog::get("dirseg");
  if (!logger) logger = spdlog::stderr_color_mt("dirseg");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char *lvl = std::getenv("DIRSEG_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

fs::path sidecar(const fs::path &out, const std::string &suffix) {
  fs::path p = out;
  p.replace_extension();
  return fs::path(p.string() + suffix);
}

fs::path labels_for(const fs::path &wav) {
  fs::path p = wav;
  return p.replace_extension(".csv");
}

std::vector<fs::path> wavs_in(const fs::path &dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::InvalidArgument, dir.string() + " is not a directory");
  std::vector<fs::path> out;
  for (const auto &e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".wav") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

int cmd_dict_train(const Overrides &o, const std::vector<std::string> &wavs, const std::vector<std::string> &labels,
                   const std::string &out) {
  if (!labels.empty() && labels.size() != wavs.size())
    throw Error(ErrorCode::InvalidArgument, fmt::format("{} label files for {} recordings", labels.size(), wavs.size()));
  const Config cfg = o.resolve();
  const PipelineParams &p = cfg.pipeline;

  std::vector<CorpusItem> items;
  items.reserve(wavs.size());
  for (std::size_t i = 0; i < wavs.size(); ++i) {
    CorpusItem item;
    item.id = fs::path(wavs[i]).filename().string();
    item.clip = read_wav(wavs[i]);
    item.truth = parse_labels(labels.empty() ? labels_for(wavs[i]) : fs::path(labels[i]));
    items.push_back(std::move(item));
  }
  const DictionaryTraining trained = train_dictionary(items, p, cfg.em, cfg.keep);
  const movmf::FitResult &fit = trained.fit;
  const movmf::DirectionDictionary &dict = trained.dict;
  save_dictionary(dict, out);

  fmt::print("frames {} dim {} iterations {} converged {} reseeds {}\n", dict.provenance.training_frames, dict.dim(),
             fit.iterations, fit.converged, fit.reseeds);
  for (std::size_t z = 0; z < dict.size(); ++z)
    fmt::print("atom {:2d} kappa {:.6g} weight {:.4f}\n", z, dict.kappas[z], dict.weights[z]);
  return kExitOk;
}

struct SegmentOutputs {
  bool dump_mi = false;
  bool dump_decisions = false;
  bool plot = false;
};

int cmd_segment(const Overrides &o, const std::string &wav, const std::string &dict_path, const std::string &out,
                const SegmentOutputs &dumps) {
  const Config cfg = o.resolve();
  const movmf::DirectionDictionary dict = load_dictionary(dict_path);
  const AudioClip clip = read_wav(wav);
  const SegmentationResult res = segment_recording(clip, dict, cfg.pipeline);
  write_segments_csv(res.segments, out);
  if (dumps.dump_mi) write_mi_csv(res.mi_curve, sidecar(out, ".mi.csv"));
  if (dumps.dump_decisions) write_decisions_csv(res.frame_decisions, res.hop_s, sidecar(out, ".decisions.csv"));
  if (dumps.plot) write_segmentation_svg(stft_magnitude(clip, cfg.pipeline.stft), res, sidecar(out, ".svg"));
  fmt::print(stderr, "{}\n", diagnostics_json(res.diagnostics));
  fmt::print("{} segments\n", res.segments.size());
  if (res.diagnostics.degenerate_fallback) return kExitDegenerate;
  return kExitOk;
}

int cmd_eval(const Overrides &o, const std::string &pred_path, const std::string &truth_path, const std::string &wav,
             double duration_s, int sample_rate) {
  const Config cfg = o.resolve();
  const StftParams &stft = cfg.pipeline.stft;
  if (!wav.empty()) {
    const AudioClip clip = read_wav(wav);
    duration_s = clip.duration_seconds();
    sample_rate = clip.sample_rate;
  }
  if (!(duration_s > 0.0)) throw Error(ErrorCode::InvalidArgument, "eval needs --wav or a positive --duration");
  stft.validate(sample_rate);
  const long len = std::lround(duration_s * sample_rate);
  const long frame = stft.frame_length(sample_rate), hop = stft.hop_length(sample_rate);
  if (len < frame) throw Error(ErrorCode::ClipTooShort, "recording shorter than one frame");
  const std::size_t n = static_cast<std::size_t>((len - frame) / hop + 1);
  const double frame_s = static_cast<double>(frame) / sample_rate, hop_s = static_cast<double>(hop) / sample_rate;

  const GroundTruth pred = parse_labels(pred_path), truth = parse_labels(truth_path);
  const EvalReport r = frame_f1(intervals_to_frame_labels(pred.intervals, n, frame_s, hop_s),
                                intervals_to_frame_labels(truth.intervals, n, frame_s, hop_s));
  nlohmann::json j = {{"frames", n},
                      {"true_positives", r.true_positives},
                      {"false_positives", r.false_positives},
                      {"false_negatives", r.false_negatives},
                      {"true_negatives", r.true_negatives},
                      {"precision", r.precision},
                      {"recall", r.recall},
                      {"f1", r.f1}};
  fmt::print("{}\n", j.dump());
  return kExitOk;
}

int cmd_mix(const std::string &signal, const std::string &noise, double snr, const std::string &out) {
  const AudioClip s = read_wav(signal), nz = read_wav(noise);
  if (s.sample_rate != nz.sample_rate)
    throw Error(ErrorCode::SampleRateMismatch, fmt::format("signal {} Hz vs noise {} Hz", s.sample_rate, nz.sample_rate));
  const MixResult m = mix_at_snr(s, nz, snr);
  write_wav(m.clip, out);
  fmt::print("{}\n", nlohmann::json{{"snr_db", snr}, {"noise_gain", m.noise_gain}, {"peak_rescale", m.peak_rescale}}.dump());
  return kExitOk;
}

int cmd_synth(SynthSpec spec, const Overrides &o, const std::string &kind, const std::string &noise,
              const std::string &noise_wav, const std::string &out_dir) {
  spec.event_kind = parse_event_kind(kind);
  spec.noise_kind = parse_noise_kind(noise);
  spec.seed = o.seed.value_or(spec.seed);
  if (!noise_wav.empty()) {
    spec.noise_kind = NoiseKind::Clip;
    spec.noise_clip = read_wav(noise_wav);
  }
  const auto corpus = synth_corpus(spec);
  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::string stem = fmt::format("synth_{:03d}", i);
    write_wav(corpus[i].clip, fs::path(out_dir) / (stem + ".wav"));
    write_labels(corpus[i].truth, fs::path(out_dir) / (stem + ".csv"));
  }
  fmt::print("{} clips written to {}\n", corpus.size(), out_dir);
  return kExitOk;
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(',', start), s.size());
    if (end > start) out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

int cmd_sweep(const Overrides &o, const std::string &corpus_dir, const std::string &noise_dir,
              const std::string &noise_kinds, const std::vector<double> &snrs, const std::string &dict_path,
              const std::string &out) {
  const Config cfg = o.resolve();
  const movmf::DirectionDictionary dict = load_dictionary(dict_path);
  std::vector<CorpusItem> corpus;
  for (const auto &wav : wavs_in(corpus_dir))
    corpus.push_back({wav.stem().string(), read_wav(wav), parse_labels(labels_for(wav))});
  if (corpus.empty()) throw Error(ErrorCode::InvalidArgument, "no WAV files in " + corpus_dir);

  std::vector<NoiseSource> noises;
  if (!noise_dir.empty())
    for (const auto &wav : wavs_in(noise_dir)) noises.push_back({wav.stem().string(), read_wav(wav)});
  std::size_t longest = 0;
  for (const auto &c : corpus) longest = std::max(longest, c.clip.samples.size());
  std::uint64_t noise_seed = o.seed.value_or(kDefaultSeed);
  for (const auto &k : split_list(noise_kinds)) {
    const NoiseKind kind = parse_noise_kind(k);
    if (kind == NoiseKind::Clip) throw Error(ErrorCode::InvalidArgument, "use --noise-dir for recorded noise");
    noises.push_back({k, generate_noise(kind, longest, corpus.front().clip.sample_rate, noise_seed++)});
  }
  if (noises.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs --noise-dir or --noise");

  const auto rows = snr_sweep(corpus, noises, snrs, dict, cfg.pipeline, cfg.sweep);
  write_sweep_csv(rows, out);
  for (const auto &r : rows)
    fmt::print("{:>8} {:>6g} dB {:>8}  P {:.3f} R {:.3f} F1 {:.3f} (per-file mean {:.3f})\n", r.noise, r.snr_db,
               r.method, r.pooled.precision, r.pooled.recall, r.pooled.f1, r.mean_file_f1);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv) {
  setup_logging();
  CLI::App app{"Directional-embedding bird vocalization segmentation"};
  app.require_subcommand(1);

  Overrides o;
  // dict-train
  auto *train = app.add_subcommand("dict-train", "learn a direction dictionary from labeled recordings");
  std::vector<std::string> train_wavs, train_labels;
  std::string train_out;
  add_common(train, o);
  train->add_option("wavs", train_wavs, "training WAVs (labels default to the same stem with .csv)")
      ->required()
      ->check(CLI::ExistingFile);
  train->add_option("--labels", train_labels, "label CSVs, one per WAV, in order");
  train->add_option("--out,-o", train_out, "dictionary JSON")->required();
  train->add_option("--mixtures", o.mixtures, "number of mixture components Z");
  train->add_option("--keep", o.keep, "atoms kept in the dictionary");
  train->add_option("--window", o.window, "super-frame width w (odd)");

  // segment
  auto *seg = app.add_subcommand("segment", "segment one recording");
  std::string seg_wav, seg_dict, seg_out;
  SegmentOutputs dumps;
  add_common(seg, o);
  seg->add_option("wav", seg_wav, "recording")->required()->check(CLI::ExistingFile);
  seg->add_option("--dict,-d", seg_dict, "dictionary JSON")->required()->check(CLI::ExistingFile);
  seg->add_option("--out,-o", seg_out, "segments CSV")->required();
  seg->add_option("--q", o.q, "auto-labeling budget Q");
  seg->add_option("--window", o.window, "super-frame width w (odd)");
  seg->add_flag("--dump-mi", dumps.dump_mi, "write <out>.mi.csv");
  seg->add_flag("--dump-decisions", dumps.dump_decisions, "write <out>.decisions.csv");
  seg->add_flag("--plot", dumps.plot, "write <out>.svg");

  // eval
  auto *ev = app.add_subcommand("eval", "frame-level precision, recall and F1 of predicted segments");
  std::string ev_pred, ev_truth, ev_wav;
  double ev_duration = 0.0;
  int ev_rate = 44100;
  add_common(ev, o);
  ev->add_option("--pred", ev_pred, "predicted segments CSV")->required()->check(CLI::ExistingFile);
  ev->add_option("--truth", ev_truth, "ground-truth CSV")->required()->check(CLI::ExistingFile);
  ev->add_option("--wav", ev_wav, "recording defining the frame grid")->check(CLI::ExistingFile);
  ev->add_option("--duration", ev_duration, "recording length in seconds (without --wav)");
  ev->add_option("--sample-rate", ev_rate, "sample rate for --duration");

  // mix
  auto *mix = app.add_subcommand("mix", "add noise to a signal at a given SNR");
  std::string mix_signal, mix_noise, mix_out;
  double mix_snr = 0.0;
  mix->add_option("--signal", mix_signal)->required()->check(CLI::ExistingFile);
  mix->add_option("--noise", mix_noise)->required()->check(CLI::ExistingFile);
  mix->add_option("--snr", mix_snr, "target SNR in dB")->required();
  mix->add_option("--out,-o", mix_out)->required();

  // synth
  auto *syn = app.add_subcommand("synth", "write a synthetic corpus of WAV + label CSV pairs");
  SynthSpec spec;
  std::string syn_kind = "chirp", syn_noise = "white", syn_noise_wav, syn_out;
  syn->add_option("--seed", o.seed, "corpus seed");
  syn->add_option("--out-dir,-o", syn_out)->required();
  syn->add_option("--count", spec.clip_count, "number of clips");
  syn->add_option("--duration", spec.duration_s, "clip length in seconds");
  syn->add_option("--events", spec.event_count, "events per clip");
  syn->add_option("--kind", syn_kind, "chirp | tone | harmonic");
  syn->add_option("--freq-lo", spec.freq_lo_hz);
  syn->add_option("--freq-hi", spec.freq_hi_hz);
  syn->add_option("--freq-jitter", spec.freq_jitter, "relative per-event jitter of the contour");
  syn->add_option("--event-ms-lo", spec.event_ms_lo);
  syn->add_option("--event-ms-hi", spec.event_ms_hi);
  syn->add_option("--noise", syn_noise, "white | pink | rain");
  syn->add_option("--noise-wav", syn_noise_wav, "recorded noise to use instead")->check(CLI::ExistingFile);
  syn->add_option("--snr", spec.snr_db, "event-to-noise SNR in dB");
  syn->add_option("--noise-rms", spec.noise_rms, "noise RMS of event-free clips");
  syn->add_option("--sample-rate", spec.sample_rate);

  // sweep
  auto *sw = app.add_subcommand("sweep", "pipeline vs energy baseline over noise types and SNRs");
  std::string sw_corpus, sw_noise_dir, sw_noise_kinds, sw_dict, sw_out;
  std::vector<double> sw_snrs{0, 5, 10, 15, 20};
  add_common(sw, o);
  sw->add_option("--corpus", sw_corpus, "directory of clean WAV + CSV pairs")->required()->check(CLI::ExistingDirectory);
  sw->add_option("--noise-dir", sw_noise_dir, "directory of noise WAVs")->check(CLI::ExistingDirectory);
  sw->add_option("--noise", sw_noise_kinds, "comma-separated generated noises (white, pink, rain)");
  sw->add_option("--snr", sw_snrs, "SNRs in dB")->delimiter(',');
  sw->add_option("--dict,-d", sw_dict)->required()->check(CLI::ExistingFile);
  sw->add_option("--out,-o", sw_out, "results CSV")->required();
  sw->add_option("--q", o.q, "auto-labeling budget Q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*train) return cmd_dict_train(o, train_wavs, train_labels, train_out);
    if (*seg) return cmd_segment(o, seg_wav, seg_dict, seg_out, dumps);
    if (*ev) return cmd_eval(o, ev_pred, ev_truth, ev_wav, ev_duration, ev_rate);
    if (*mix) return cmd_mix(mix_signal, mix_noise, mix_snr, mix_out);
    if (*syn) return cmd_synth(spec, o, syn_kind, syn_noise, syn_noise_wav, syn_out);
    if (*sw) return cmd_sweep(o, sw_corpus, sw_noise_dir, sw_noise_kinds, sw_snrs, sw_dict, sw_out);
  } catch (const Error &e) {
    spdlog::error("{}", e.what());
    return is_input_error(e.code()) ? kExitBadInput : kExitFailure;
  } catch (const std::exception &e) {
    spdlog::error("{}", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}

int run_cli(const std::vector<std::string> &args) {
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace dirseg
