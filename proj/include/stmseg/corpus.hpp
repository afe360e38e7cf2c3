#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "stmseg/audio.hpp"
#include "stmseg/evaluation.hpp"
#include "stmseg/features.hpp"
#include "stmseg/stm.hpp"

namespace stmseg {

enum class Variant { kBaseline, kProposed };
std::string_view to_string(Variant variant) noexcept;

/// `on` -> proposed, `off` -> baseline, `both` -> baseline then proposed.
std::vector<Variant> parse_postprocess(std::string_view text);

struct RunConfig {
  FeatureKind features = FeatureKind::kPlp;
  std::vector<Variant> variants{Variant::kProposed};
  FrameConfig frame;
  int regression_halfwidth = 2;
  int dim = 12;
  std::vector<double> tolerances_ms{20.0};
  std::uint64_t seed = 0;
  double headroom = 0.5;
  std::vector<double> clip_percents{10.0, 30.0, 50.0, 70.0, 90.0};
  std::vector<double> snr_db{0.0, 5.0, 10.0, 15.0, 20.0};
};

struct CorpusItem {
  std::string name;  // path relative to the corpus root, without extension
  std::filesystem::path wav;
  std::filesystem::path phn;
};

struct CorpusListing {
  std::vector<CorpusItem> items;          // sorted by name
  std::vector<std::string> unpaired;      // files lacking a partner
};

/// Recursively pairs `<name>.wav` with `<name>.phn` (extension case ignored).
CorpusListing discover_corpus(const std::filesystem::path& root);

/// Audio and reference boundaries of one utterance, loaded once per run.
struct LoadedUtterance {
  std::string name;
  AudioBuffer audio;
  BoundarySet reference;
};

LoadedUtterance load_utterance(const CorpusItem& item);

enum class ConditionKind { kClean, kClip, kNoise };
std::string_view to_string(ConditionKind kind) noexcept;

struct Condition {
  ConditionKind kind = ConditionKind::kClean;
  double level = 0.0;  // clip percent or SNR in dB
};

/// FNV-1a over the utterance name, XORed into the global seed.
std::uint64_t file_seed(std::uint64_t global_seed, std::string_view name);

/// Clipping works on the raw signal. Noise is added to a copy normalized to
/// `headroom` peak (skipped when headroom <= 0).
AudioBuffer degrade(const AudioBuffer& audio, const Condition& condition,
                    const RunConfig& cfg, std::string_view name);

struct SweepRow {
  Condition condition;
  Variant variant = Variant::kProposed;
  EvalReport report;
};

/// One row per (variant, tolerance), ordered by variant then tolerance.
std::vector<SweepRow> evaluate_condition(
    const std::vector<LoadedUtterance>& corpus, const Condition& condition,
    const RunConfig& cfg);

/// Clean cell, then every clipping percent, then every SNR.
std::vector<SweepRow> run_sweep(const std::vector<LoadedUtterance>& corpus,
                                const RunConfig& cfg);

/// `condition,level,variant,tolerance_ms,precision,recall,fscore`
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

}  // namespace stmseg
