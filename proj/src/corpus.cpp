#include "stmseg/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <map>
#include <sstream>

#include "stmseg/degrade.hpp"
#include "stmseg/error.hpp"
#include "stmseg/transcription.hpp"
#include "stmseg/wav.hpp"

namespace stmseg {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::string_view to_string(Variant variant) noexcept {
  return variant == Variant::kBaseline ? "baseline" : "proposed";
}

std::vector<Variant> parse_postprocess(std::string_view text) {
  if (text == "on") return {Variant::kProposed};
  if (text == "off") return {Variant::kBaseline};
  if (text == "both") return {Variant::kBaseline, Variant::kProposed};
  fail(ErrorKind::kParameter, "postprocess must be on, off or both");
}

std::string_view to_string(ConditionKind kind) noexcept {
  switch (kind) {
    case ConditionKind::kClean: return "clean";
    case ConditionKind::kClip: return "clip";
    case ConditionKind::kNoise: return "noise";
  }
  return "clean";
}

CorpusListing discover_corpus(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    fail(ErrorKind::kIo, "corpus directory " + root.string() + " does not exist");

  std::map<std::string, fs::path> wavs, phns;
  for (auto it = fs::recursive_directory_iterator(root, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) fail(ErrorKind::kIo, "cannot scan " + root.string() + ": " + ec.message());
    if (!it->is_regular_file()) continue;
    const fs::path& p = it->path();
    const std::string ext = lower(p.extension().string());
    fs::path rel = fs::relative(p, root);
    rel.replace_extension();
    const std::string name = rel.generic_string();
    if (ext == ".wav")
      wavs[name] = p;
    else if (ext == ".phn")
      phns[name] = p;
  }

  CorpusListing listing;
  for (const auto& [name, wav] : wavs) {
    if (auto phn = phns.find(name); phn != phns.end())
      listing.items.push_back({name, wav, phn->second});
    else
      listing.unpaired.push_back(wav.string());
  }
  for (const auto& [name, phn] : phns)
    if (!wavs.contains(name)) listing.unpaired.push_back(phn.string());
  return listing;
}

LoadedUtterance load_utterance(const CorpusItem& item) {
  LoadedUtterance u;
  u.name = item.name;
  u.audio = read_wav(item.wav);
  const auto transcription = read_phone_transcription(item.phn, u.audio.sample_rate_hz);
  u.reference = reference_boundaries(transcription, u.audio.sample_rate_hz);
  return u;
}

std::uint64_t file_seed(std::uint64_t global_seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return global_seed ^ h;
}

AudioBuffer degrade(const AudioBuffer& audio, const Condition& condition,
                    const RunConfig& cfg, std::string_view name) {
  switch (condition.kind) {
    case ConditionKind::kClean:
      return audio;
    case ConditionKind::kClip:
      return apply_clipping(audio, ClipSpec{condition.level});
    case ConditionKind::kNoise: {
      const AudioBuffer base = cfg.headroom > 0.0 ? normalize_peak(audio, cfg.headroom) : audio;
      return apply_awgn(base, NoiseSpec{condition.level, file_seed(cfg.seed, name)});
    }
  }
  return audio;
}

std::vector<SweepRow> evaluate_condition(const std::vector<LoadedUtterance>& corpus,
                                         const Condition& condition,
                                         const RunConfig& cfg) {
  if (corpus.empty()) fail(ErrorKind::kParameter, "corpus has no utterances");
  if (cfg.variants.empty() || cfg.tolerances_ms.empty())
    fail(ErrorKind::kParameter, "need at least one variant and one tolerance");

  struct Counts {
    std::size_t matched = 0, detected = 0, reference = 0;
  };
  std::vector<std::vector<Counts>> totals(cfg.variants.size(),
                                          std::vector<Counts>(cfg.tolerances_ms.size()));
  const StmConfig stm_cfg{cfg.regression_halfwidth, false};

  for (const auto& utt : corpus) {
    const AudioBuffer audio = degrade(utt.audio, condition, cfg, utt.name);
    const auto features = extract_features(cfg.features, audio, cfg.frame, cfg.dim);
    const StmContour raw = stm_contour(features, stm_cfg);
    for (std::size_t v = 0; v < cfg.variants.size(); ++v) {
      const BoundarySet detected = pick_peaks(
          cfg.variants[v] == Variant::kProposed ? median_floor(raw) : raw);
      for (std::size_t t = 0; t < cfg.tolerances_ms.size(); ++t) {
        auto& c = totals[v][t];
        c.matched += match_boundaries(utt.reference, detected,
                                      EvalConfig{cfg.tolerances_ms[t]}).size();
        c.detected += detected.size();
        c.reference += utt.reference.size();
      }
    }
  }

  std::vector<SweepRow> rows;
  for (std::size_t v = 0; v < cfg.variants.size(); ++v)
    for (std::size_t t = 0; t < cfg.tolerances_ms.size(); ++t) {
      const auto& c = totals[v][t];
      rows.push_back({condition, cfg.variants[v],
                      report_from_counts(c.matched, c.detected, c.reference,
                                         cfg.tolerances_ms[t])});
    }
  return rows;
}

std::vector<SweepRow> run_sweep(const std::vector<LoadedUtterance>& corpus,
                                const RunConfig& cfg) {
  std::vector<Condition> grid{{ConditionKind::kClean, 0.0}};
  for (double p : cfg.clip_percents) grid.push_back({ConditionKind::kClip, p});
  for (double snr : cfg.snr_db) grid.push_back({ConditionKind::kNoise, snr});

  std::vector<SweepRow> rows;
  for (const auto& condition : grid) {
    auto cell = evaluate_condition(corpus, condition, cfg);
    rows.insert(rows.end(), cell.begin(), cell.end());
  }
  return rows;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) fail(ErrorKind::kParameter, "cannot format number");
  return std::string(buf, ptr);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "condition,level,variant,tolerance_ms,precision,recall,fscore\n";
  for (const auto& row : rows) {
    out += std::string(to_string(row.condition.kind)) + ',' + format_number(row.condition.level) +
           ',' + std::string(to_string(row.variant)) + ',' +
           format_number(row.report.tolerance_ms) + ',' +
           format_number(row.report.precision_pct) + ',' +
           format_number(row.report.recall_pct) + ',' +
           format_number(row.report.fscore_pct) + '\n';
  }
  return out;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "condition,level,variant,tolerance_ms,precision,recall,fscore")
    fail(ErrorKind::kParse, "sweep CSV header mismatch");

  auto number = [](const std::string& s, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
  };

  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 7) fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": expected 7 fields");

    SweepRow row;
    if (f[0] == "clean") row.condition.kind = ConditionKind::kClean;
    else if (f[0] == "clip") row.condition.kind = ConditionKind::kClip;
    else if (f[0] == "noise") row.condition.kind = ConditionKind::kNoise;
    else fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": unknown condition");
    row.condition.level = number(f[1], line_no);
    if (f[2] == "baseline") row.variant = Variant::kBaseline;
    else if (f[2] == "proposed") row.variant = Variant::kProposed;
    else fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": unknown variant");
    row.report.tolerance_ms = number(f[3], line_no);
    row.report.precision_pct = number(f[4], line_no);
    row.report.recall_pct = number(f[5], line_no);
    row.report.fscore_pct = number(f[6], line_no);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace stmseg
