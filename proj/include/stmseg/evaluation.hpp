#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stmseg/audio.hpp"

namespace stmseg {

struct EvalConfig {
  double tolerance_ms = 20.0;
};

struct EvalReport {
  double tolerance_ms = 20.0;
  std::size_t matched = 0;
  std::size_t detected = 0;
  std::size_t reference = 0;
  double precision_pct = 0.0;
  double recall_pct = 0.0;
  double fscore_pct = 0.0;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

struct MatchedPair {
  double reference_s = 0.0;
  double detected_s = 0.0;
};

/// Greedy one-to-one matching: references in ascending order each take the
/// nearest unused detection within tolerance, the earlier one on a tie.
std::vector<MatchedPair> match_boundaries(const BoundarySet& reference,
                                          const BoundarySet& detected,
                                          const EvalConfig& cfg);

/// Precision, recall and F-score from raw counts, in percent.
/// Both counts zero gives 100/100/100; one of them zero gives F = 0.
EvalReport report_from_counts(std::size_t matched, std::size_t detected,
                              std::size_t reference, double tolerance_ms);

EvalReport score(const BoundarySet& reference, const BoundarySet& detected,
                 const EvalConfig& cfg);

using BoundaryPair = std::pair<BoundarySet, BoundarySet>;  // (reference, detected)

/// Micro-average: counts are summed over utterances before the ratios.
EvalReport corpus_eval(const std::vector<BoundaryPair>& pairs,
                       const EvalConfig& cfg);

/// `{tolerance_ms, matched, detected, reference, precision_pct, recall_pct,
/// fscore_pct}`
std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);

}  // namespace stmseg
