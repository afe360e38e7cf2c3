#include <doctest.h>

#include <fstream>

#include "stmseg/corpus.hpp"
#include "stmseg/degrade.hpp"
#include "stmseg/error.hpp"
#include "stmseg/stm.hpp"
#include "stmseg/synthetic.hpp"
#include "stmseg/transcription.hpp"
#include "stmseg/wav.hpp"
#include "test_support.hpp"

using namespace stmseg;

namespace {

std::vector<LoadedUtterance> loaded_corpus(std::size_t count, std::uint64_t seed,
                                           const SyntheticConfig& cfg = {}) {
  std::vector<LoadedUtterance> out;
  const auto synth = make_synthetic_corpus(count, seed, cfg);
  for (std::size_t i = 0; i < synth.size(); ++i) {
    out.push_back({"utt" + std::to_string(i), synth[i].audio,
                   reference_boundaries(synth[i].transcription, cfg.sample_rate_hz)});
  }
  return out;
}

const SweepRow& find_row(const std::vector<SweepRow>& rows, ConditionKind kind, double level,
                         Variant variant) {
  for (const auto& r : rows)
    if (r.condition.kind == kind && r.condition.level == level && r.variant == variant) return r;
  FAIL("row not found");
  return rows.front();
}

}  // namespace

TEST_CASE("synthetic utterances follow their construction") {
  const SyntheticConfig cfg;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u = make_synthetic_utterance(seed, cfg);
    const auto& entries = u.transcription.entries;
    REQUIRE(entries.size() >= 4);
    REQUIRE(entries.size() <= 8);
    CHECK(entries.front().start_sample == 0);
    CHECK(entries.back().end_sample == static_cast<std::int64_t>(u.audio.samples.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto len = entries[i].end_sample - entries[i].start_sample;
      CHECK(len >= 3200);
      CHECK(len <= 6400);
      if (i) CHECK(entries[i].label != entries[i - 1].label);
    }
    double peak = 0.0;
    for (double v : u.audio.samples) peak = std::max(peak, std::abs(v));
    CHECK(peak <= 0.5 + 1e-12);
    CHECK(make_synthetic_utterance(seed, cfg).audio.samples == u.audio.samples);
  }
}

TEST_CASE("corpus discovery pairs files recursively") {
  testing::TempDir dir;
  std::filesystem::create_directories(dir / "dr1/spk");
  const auto u = make_synthetic_utterance(1);
  write_wav(u.audio, dir / "dr1/spk/sa1.WAV");
  write_phone_transcription(u.transcription, dir / "dr1/spk/sa1.PHN");
  write_wav(u.audio, dir / "b.wav");
  write_phone_transcription(u.transcription, dir / "b.phn");
  write_wav(u.audio, dir / "lonely.wav");
  testing::write_bytes(dir / "notes.txt", "ignored");

  const auto listing = discover_corpus(dir.path());
  REQUIRE(listing.items.size() == 2);
  CHECK(listing.items[0].name == "b");
  CHECK(listing.items[1].name == "dr1/spk/sa1");
  REQUIRE(listing.unpaired.size() == 1);
  CHECK(listing.unpaired[0].find("lonely.wav") != std::string::npos);

  const auto loaded = load_utterance(listing.items[1]);
  CHECK(loaded.reference == reference_boundaries(u.transcription, 16000));

  try {
    discover_corpus(dir / "missing");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIo);
  }
}

TEST_CASE("per-file seeds mix FNV-1a of the name") {
  CHECK(file_seed(0, "") == 0xcbf29ce484222325ULL);
  CHECK(file_seed(0, "a") == 0xaf63dc4c8601ec8cULL);
  CHECK(file_seed(0, "foobar") == 0x85944171f73967e8ULL);
  CHECK(file_seed(5, "a") == (0xaf63dc4c8601ec8cULL ^ 5ULL));
}

TEST_CASE("postprocess flag parsing") {
  CHECK(parse_postprocess("on") == std::vector<Variant>{Variant::kProposed});
  CHECK(parse_postprocess("off") == std::vector<Variant>{Variant::kBaseline});
  CHECK(parse_postprocess("both") == std::vector<Variant>{Variant::kBaseline, Variant::kProposed});
  CHECK_THROWS_AS(parse_postprocess("maybe"), Error);
}

TEST_CASE("numbers print as shortest round-trip text") {
  CHECK(format_number(50.0) == "50");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(100.0 * 2.0 / 3.0) == "66.66666666666667");
  for (double v : {1e-300, 3.14159, 77.84, 1.0 / 3.0})
    CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("sweep CSV round trip and ordering") {
  RunConfig cfg;
  cfg.variants = {Variant::kBaseline, Variant::kProposed};
  cfg.tolerances_ms = {20.0, 40.0};
  cfg.clip_percents = {30.0};
  cfg.snr_db = {10.0};
  cfg.seed = 3;
  const auto corpus = loaded_corpus(3, 4);
  const auto rows = run_sweep(corpus, cfg);
  REQUIRE(rows.size() == 3 * 2 * 2);
  CHECK(rows[0].condition.kind == ConditionKind::kClean);
  CHECK(rows[4].condition.kind == ConditionKind::kClip);
  CHECK(rows[8].condition.kind == ConditionKind::kNoise);
  CHECK(rows[0].variant == Variant::kBaseline);
  CHECK(rows[1].report.tolerance_ms == 40.0);

  const auto text = sweep_csv(rows);
  CHECK(text.rfind("condition,level,variant,tolerance_ms,precision,recall,fscore\n", 0) == 0);
  const auto back = parse_sweep_csv(text);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].condition.kind == rows[i].condition.kind);
    CHECK(back[i].condition.level == rows[i].condition.level);
    CHECK(back[i].variant == rows[i].variant);
    CHECK(back[i].report.fscore_pct == rows[i].report.fscore_pct);
    CHECK(back[i].report.precision_pct == rows[i].report.precision_pct);
  }
  CHECK(sweep_csv(run_sweep(corpus, cfg)) == text);
  CHECK_THROWS_AS(parse_sweep_csv("bad header\n"), Error);
}

TEST_CASE("clean sweep cell equals direct evaluation") {
  RunConfig cfg;
  cfg.features = FeatureKind::kMfcc;
  const auto corpus = loaded_corpus(4, 8);
  const auto rows = evaluate_condition(corpus, {ConditionKind::kClean, 0.0}, cfg);
  REQUIRE(rows.size() == 1);
  std::vector<BoundaryPair> pairs;
  for (const auto& u : corpus)
    pairs.emplace_back(u.reference, segment(u.audio, FeatureKind::kMfcc, {}, {}));
  CHECK(rows[0].report == corpus_eval(pairs, {}));
}

TEST_CASE("degraded copies depend on the file seed") {
  RunConfig cfg;
  cfg.seed = 11;
  const auto audio = make_synthetic_utterance(2).audio;
  const Condition noise{ConditionKind::kNoise, 10.0};
  CHECK(degrade(audio, noise, cfg, "x").samples == degrade(audio, noise, cfg, "x").samples);
  CHECK(degrade(audio, noise, cfg, "x").samples != degrade(audio, noise, cfg, "y").samples);
  CHECK(degrade(audio, {ConditionKind::kClean, 0.0}, cfg, "x").samples == audio.samples);
  const auto clipped = degrade(audio, {ConditionKind::kClip, 30.0}, cfg, "x");
  CHECK(clipped.samples == apply_clipping(audio, {30.0}).samples);
}

TEST_CASE("flooring never adds detections across a noisy corpus") {
  SyntheticConfig synth;
  synth.frozen_noise = false;
  RunConfig cfg;
  cfg.variants = {Variant::kBaseline, Variant::kProposed};
  const auto corpus = loaded_corpus(10, 21, synth);
  const auto rows = evaluate_condition(corpus, {ConditionKind::kClean, 0.0}, cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].report.detected >= rows[1].report.detected);
}

TEST_CASE("flooring helps at 10 dB") {
  RunConfig cfg;
  cfg.variants = {Variant::kBaseline, Variant::kProposed};
  cfg.seed = 42;
  const auto corpus = loaded_corpus(20, 42);
  const auto rows = evaluate_condition(corpus, {ConditionKind::kNoise, 10.0}, cfg);
  const auto& base = find_row(rows, ConditionKind::kNoise, 10.0, Variant::kBaseline);
  const auto& prop = find_row(rows, ConditionKind::kNoise, 10.0, Variant::kProposed);
  CHECK(prop.report.fscore_pct >= base.report.fscore_pct);
  CHECK(base.report.detected >= prop.report.detected);
}
