// stmseg: phone boundary detection, degradation and scoring from the shell.
//
//   stmseg segment  utt.wav [--postprocess on|off|both] [--out DIR]
//   stmseg degrade  clip  utt.wav --percent 30 [--out DIR]
//   stmseg degrade  noise utt.wav --snr-db 10 --seed 7 [--headroom 0.5]
//   stmseg evaluate [CORPUS] [--tolerance-ms 20,30,40] [--out DIR]
//   stmseg sweep    [CORPUS] [--clip-percent ...] [--snr-db ...] [--out DIR]
//   stmseg synth    DIR [--count 50] [--seed 1]
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 format.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stmseg/corpus.hpp"
#include "stmseg/degrade.hpp"
#include "stmseg/error.hpp"
#include "stmseg/features.hpp"
#include "stmseg/stm.hpp"
#include "stmseg/synthetic.hpp"
#include "stmseg/transcription.hpp"
#include "stmseg/wav.hpp"

namespace fs = std::filesystem;
using namespace stmseg;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kParameter: return kExitUsage;
    default: return kExitFormat;
  }
}

struct CommonOptions {
  std::string features = "plp";
  std::string postprocess = "on";
  std::vector<double> tolerances_ms{20.0};
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  double frame_ms = 30.0;
  double overlap_ms = 20.0;
  int halfwidth = 2;
  int dim = 12;
  double headroom = 0.5;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--features", o.features, "plp or mfcc")
      ->check(CLI::IsMember({"plp", "mfcc"}))->capture_default_str();
  app->add_option("--postprocess", o.postprocess, "median floor: on, off or both")
      ->check(CLI::IsMember({"on", "off", "both"}))->capture_default_str();
  app->add_option("--tolerance-ms", o.tolerances_ms, "comma-separated tolerances")
      ->delimiter(',')->capture_default_str();
  app->add_option("--seed", o.seed, "noise seed")->capture_default_str();
  app->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  app->add_option("--frame-ms", o.frame_ms, "analysis frame length")->capture_default_str();
  app->add_option("--overlap-ms", o.overlap_ms, "frame overlap")->capture_default_str();
  app->add_option("--halfwidth", o.halfwidth, "regression half-width I")->capture_default_str();
  app->add_option("--dim", o.dim, "cepstral coefficients per frame")->capture_default_str();
}

RunConfig to_run_config(const CommonOptions& o) {
  RunConfig cfg;
  cfg.features = parse_feature_kind(o.features);
  cfg.variants = parse_postprocess(o.postprocess);
  cfg.frame = FrameConfig{o.frame_ms, o.overlap_ms};
  cfg.regression_halfwidth = o.halfwidth;
  cfg.dim = o.dim;
  cfg.tolerances_ms = o.tolerances_ms;
  cfg.seed = o.seed;
  cfg.headroom = o.headroom;
  for (double t : cfg.tolerances_ms)
    if (!(t > 0.0)) fail(ErrorKind::kParameter, "tolerances must be positive");
  return cfg;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

std::string corpus_root(const std::string& arg) {
  if (!arg.empty()) return arg;
  if (const char* env = std::getenv("STMSEG_CORPUS"); env != nullptr && *env != '\0') return env;
  fail(ErrorKind::kParameter, "no corpus directory given and STMSEG_CORPUS is unset");
}

std::vector<LoadedUtterance> load_corpus(const std::string& root) {
  const CorpusListing listing = discover_corpus(root);
  for (const auto& path : listing.unpaired)
    std::cerr << "warning: skipping unpaired file " << path << '\n';
  if (listing.items.empty())
    fail(ErrorKind::kFormat, "no <name>.wav/<name>.phn pairs under " + root);
  std::vector<LoadedUtterance> corpus;
  corpus.reserve(listing.items.size());
  for (const auto& item : listing.items) corpus.push_back(load_utterance(item));
  return corpus;
}

int run_segment(const std::string& wav, const CommonOptions& o, bool out_given,
                const std::string& contour_csv, const std::string& features_csv) {
  const RunConfig cfg = to_run_config(o);
  if (cfg.variants.size() > 1 && !out_given)
    fail(ErrorKind::kParameter, "--postprocess both needs --out");

  const AudioBuffer audio = read_wav(wav);
  const FeatureSequence features = extract_features(cfg.features, audio, cfg.frame, cfg.dim);
  if (!features_csv.empty()) write_feature_csv(features, features_csv);
  const StmContour raw = stm_contour(features, {cfg.regression_halfwidth, false});
  const StmContour floored = median_floor(raw);
  if (!contour_csv.empty()) {
    const bool any_proposed = std::find(cfg.variants.begin(), cfg.variants.end(),
                                        Variant::kProposed) != cfg.variants.end();
    write_contour_csv(raw, any_proposed ? &floored : nullptr, contour_csv);
  }

  const std::string stem = fs::path(wav).stem().string();
  for (Variant v : cfg.variants) {
    const BoundarySet b = pick_peaks(v == Variant::kProposed ? floored : raw);
    if (!out_given) {
      std::cout << format_boundaries(b);
      continue;
    }
    ensure_dir(o.out_dir);
    const std::string suffix = cfg.variants.size() > 1 ? "." + std::string(to_string(v)) : "";
    write_boundaries(b, fs::path(o.out_dir) / (stem + suffix + ".bnd"));
  }
  return 0;
}

fs::path degraded_path(const std::string& wav, const std::string& output,
                       const std::string& out_dir, const std::string& tag) {
  if (!output.empty()) return output;
  return fs::path(out_dir) / (fs::path(wav).stem().string() + "." + tag + ".wav");
}

int run_degrade_clip(const std::string& wav, double percent, const std::string& output,
                     const std::string& out_dir) {
  const AudioBuffer audio = read_wav(wav);
  const double tau = clip_threshold(audio, ClipSpec{percent});
  const AudioBuffer clipped = clip_at(audio, tau);
  const fs::path path = degraded_path(wav, output, out_dir, "clip" + format_number(percent));
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  write_wav(clipped, path);
  nlohmann::ordered_json meta{{"kind", "clip"}, {"percent", percent}, {"tau", tau}};
  write_text(fs::path(path).replace_extension(".json"), meta.dump(2) + "\n");
  std::cout << path.string() << '\n';
  return 0;
}

int run_degrade_noise(const std::string& wav, double snr_db, const CommonOptions& o,
                      const std::string& output) {
  const AudioBuffer audio = read_wav(wav);
  const AudioBuffer base = o.headroom > 0.0 ? normalize_peak(audio, o.headroom) : audio;
  const std::uint64_t seed = file_seed(o.seed, fs::path(wav).stem().string());
  const double sigma = noise_sigma(base, snr_db);
  const AudioBuffer noisy = apply_awgn(base, NoiseSpec{snr_db, seed});
  const fs::path path = degraded_path(wav, output, o.out_dir, "snr" + format_number(snr_db));
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  write_wav(noisy, path);
  nlohmann::ordered_json meta{{"kind", "noise"}, {"snr_db", snr_db}, {"sigma", sigma},
                              {"seed", o.seed}, {"file_seed", seed},
                              {"headroom", o.headroom}};
  write_text(fs::path(path).replace_extension(".json"), meta.dump(2) + "\n");
  std::cout << path.string() << '\n';
  return 0;
}

void print_rows(const std::vector<SweepRow>& rows) {
  for (const auto& r : rows)
    std::printf("%-6s %5s  %-8s tol=%-4s matched=%zu detected=%zu reference=%zu  "
                "P=%6.2f R=%6.2f F=%6.2f\n",
                std::string(to_string(r.condition.kind)).c_str(),
                format_number(r.condition.level).c_str(),
                std::string(to_string(r.variant)).c_str(),
                format_number(r.report.tolerance_ms).c_str(), r.report.matched,
                r.report.detected, r.report.reference, r.report.precision_pct,
                r.report.recall_pct, r.report.fscore_pct);
}

int run_evaluate(const std::string& corpus_arg, const CommonOptions& o) {
  const RunConfig cfg = to_run_config(o);
  const auto corpus = load_corpus(corpus_root(corpus_arg));
  const auto rows = evaluate_condition(corpus, {ConditionKind::kClean, 0.0}, cfg);

  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    auto j = nlohmann::ordered_json::parse(report_to_json(r.report));
    j["variant"] = to_string(r.variant);
    j["features"] = to_string(cfg.features);
    reports.push_back(std::move(j));
  }
  ensure_dir(o.out_dir);
  write_text(fs::path(o.out_dir) / "report.json", reports.dump(2) + "\n");
  write_text(fs::path(o.out_dir) / "report.csv", sweep_csv(rows));
  std::printf("%zu utterances\n", corpus.size());
  print_rows(rows);
  return 0;
}

int run_sweep_cmd(const std::string& corpus_arg, const CommonOptions& o,
                  const std::vector<double>& clips, const std::vector<double>& snrs) {
  RunConfig cfg = to_run_config(o);
  cfg.clip_percents = clips;
  cfg.snr_db = snrs;
  for (double p : clips)
    if (!(p > 0.0 && p < 100.0)) fail(ErrorKind::kParameter, "clip percents must lie in (0, 100)");
  const auto corpus = load_corpus(corpus_root(corpus_arg));
  const auto rows = run_sweep(corpus, cfg);
  ensure_dir(o.out_dir);
  write_text(fs::path(o.out_dir) / "sweep.csv", sweep_csv(rows));
  print_rows(rows);
  return 0;
}

int run_synth(const std::string& dir, std::size_t count, std::uint64_t seed, int rate,
              bool random_noise) {
  SyntheticConfig cfg;
  cfg.sample_rate_hz = rate;
  cfg.frozen_noise = !random_noise;
  ensure_dir(dir);
  const auto corpus = make_synthetic_corpus(count, seed, cfg);
  char name[32];
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::snprintf(name, sizeof name, "utt%03zu", i);
    write_wav(corpus[i].audio, fs::path(dir) / (std::string(name) + ".wav"));
    write_phone_transcription(corpus[i].transcription, fs::path(dir) / (std::string(name) + ".phn"));
  }
  std::printf("wrote %zu utterances to %s\n", corpus.size(), dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STM phone segmentation with median-floor post-processing"};
  app.require_subcommand(1);

  CommonOptions seg_opts;
  std::string seg_wav, contour_csv, features_csv;
  auto* seg = app.add_subcommand("segment", "detect phone boundaries in one WAV file");
  seg->add_option("wav", seg_wav, "16-bit mono PCM WAV")->required();
  add_common(seg, seg_opts);
  seg->add_option("--contour-csv", contour_csv, "write the STM contour as CSV");
  seg->add_option("--features-csv", features_csv, "write the feature matrix as CSV");

  auto* deg = app.add_subcommand("degrade", "simulate clipping or additive noise");
  deg->require_subcommand(1);
  CommonOptions clip_opts, noise_opts;
  std::string clip_wav, noise_wav, clip_output, noise_output;
  double percent = 0.0, snr_db = 0.0;
  auto* clip = deg->add_subcommand("clip", "clip a target percentage of samples");
  clip->add_option("wav", clip_wav)->required();
  clip->add_option("--percent", percent, "share of samples to clip")
      ->required()->check(CLI::Range(0.0, 100.0));
  clip->add_option("--out", clip_opts.out_dir, "output directory")->capture_default_str();
  clip->add_option("-o,--output", clip_output, "output WAV path");
  auto* noise = deg->add_subcommand("noise", "add white Gaussian noise at a target SNR");
  noise->add_option("wav", noise_wav)->required();
  noise->add_option("--snr-db", snr_db, "target SNR in dB")->required();
  noise->add_option("--seed", noise_opts.seed, "global noise seed")->capture_default_str();
  noise->add_option("--headroom", noise_opts.headroom,
                    "peak to normalize to before adding noise; 0 disables")
      ->capture_default_str();
  noise->add_option("--out", noise_opts.out_dir, "output directory")->capture_default_str();
  noise->add_option("-o,--output", noise_output, "output WAV path");

  CommonOptions eval_opts;
  std::string eval_corpus;
  auto* eval = app.add_subcommand("evaluate", "score a corpus of <name>.wav + <name>.phn");
  eval->add_option("corpus", eval_corpus, "corpus root (default $STMSEG_CORPUS)");
  add_common(eval, eval_opts);

  CommonOptions sweep_opts;
  sweep_opts.postprocess = "both";
  std::string sweep_corpus;
  std::vector<double> clips{10, 30, 50, 70, 90}, snrs{0, 5, 10, 15, 20};
  auto* sweep = app.add_subcommand("sweep", "evaluate the clean, clipping and noise grid");
  sweep->add_option("corpus", sweep_corpus, "corpus root (default $STMSEG_CORPUS)");
  add_common(sweep, sweep_opts);
  sweep->add_option("--clip-percent", clips, "clipping grid")->delimiter(',')->capture_default_str();
  sweep->add_option("--snr-db", snrs, "SNR grid")->delimiter(',')->capture_default_str();
  sweep->add_option("--headroom", sweep_opts.headroom, "peak normalization before noise")
      ->capture_default_str();

  std::string synth_dir;
  std::size_t synth_count = 50;
  std::uint64_t synth_seed = 1;
  int synth_rate = 16000;
  bool synth_random = false;
  auto* synth = app.add_subcommand("synth", "write a synthetic corpus with known boundaries");
  synth->add_option("dir", synth_dir)->required();
  synth->add_option("--count", synth_count)->capture_default_str();
  synth->add_option("--seed", synth_seed)->capture_default_str();
  synth->add_option("--sample-rate", synth_rate)->capture_default_str();
  synth->add_flag("--random-noise", synth_random, "use non-repeating noise segments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*seg)
      return run_segment(seg_wav, seg_opts, seg->count("--out") > 0, contour_csv, features_csv);
    if (*clip) return run_degrade_clip(clip_wav, percent, clip_output, clip_opts.out_dir);
    if (*noise) return run_degrade_noise(noise_wav, snr_db, noise_opts, noise_output);
    if (*eval) return run_evaluate(eval_corpus, eval_opts);
    if (*sweep) return run_sweep_cmd(sweep_corpus, sweep_opts, clips, snrs);
    if (*synth) return run_synth(synth_dir, synth_count, synth_seed, synth_rate, synth_random);
  } catch (const Error& e) {
    std::cerr << "stmseg: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "stmseg: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
