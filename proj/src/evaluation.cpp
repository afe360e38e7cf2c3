#include "stmseg/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "stmseg/error.hpp"

namespace stmseg {
namespace {

// Boundary times come from sample indices divided by the rate, so two
// distances that are equal in decimal can differ in the last bits.
constexpr double kTimeEpsilon = 1e-9;

void check_tolerance(const EvalConfig& cfg) {
  if (!(cfg.tolerance_ms > 0.0) || !std::isfinite(cfg.tolerance_ms))
    fail(ErrorKind::kParameter, "tolerance must be positive");
}

}  // namespace

std::vector<MatchedPair> match_boundaries(const BoundarySet& reference,
                                          const BoundarySet& detected,
                                          const EvalConfig& cfg) {
  check_tolerance(cfg);
  const double tol = cfg.tolerance_ms / 1000.0;
  const auto det = detected.times();
  std::vector<bool> used(det.size(), false);
  std::vector<MatchedPair> pairs;

  for (double ref : reference.times()) {
    // Candidates lie in [ref - tol, ref + tol]; det is sorted.
    auto first = std::lower_bound(det.begin(), det.end(), ref - tol - kTimeEpsilon);
    std::size_t best = det.size();
    double best_dist = 0.0;
    for (auto it = first; it != det.end() && *it <= ref + tol + kTimeEpsilon; ++it) {
      const auto idx = static_cast<std::size_t>(it - det.begin());
      if (used[idx]) continue;
      const double dist = std::abs(*it - ref);
      if (dist > tol + kTimeEpsilon) continue;
      if (best == det.size() || dist < best_dist - kTimeEpsilon) {
        best = idx;
        best_dist = dist;
      }
    }
    if (best != det.size()) {
      used[best] = true;
      pairs.push_back({ref, det[best]});
    }
  }
  return pairs;
}

EvalReport report_from_counts(std::size_t matched, std::size_t detected,
                              std::size_t reference, double tolerance_ms) {
  if (matched > std::min(detected, reference))
    fail(ErrorKind::kParameter, "matched count exceeds detected or reference count");
  EvalReport r;
  r.tolerance_ms = tolerance_ms;
  r.matched = matched;
  r.detected = detected;
  r.reference = reference;
  if (detected == 0 && reference == 0) {
    r.precision_pct = r.recall_pct = r.fscore_pct = 100.0;
    return r;
  }
  r.precision_pct = detected == 0 ? 0.0 : 100.0 * static_cast<double>(matched) / static_cast<double>(detected);
  r.recall_pct = reference == 0 ? 0.0 : 100.0 * static_cast<double>(matched) / static_cast<double>(reference);
  const double sum = r.precision_pct + r.recall_pct;
  r.fscore_pct = sum > 0.0 ? 2.0 * r.precision_pct * r.recall_pct / sum : 0.0;
  return r;
}

EvalReport score(const BoundarySet& reference, const BoundarySet& detected,
                 const EvalConfig& cfg) {
  const auto pairs = match_boundaries(reference, detected, cfg);
  return report_from_counts(pairs.size(), detected.size(), reference.size(),
                            cfg.tolerance_ms);
}

EvalReport corpus_eval(const std::vector<BoundaryPair>& pairs, const EvalConfig& cfg) {
  if (pairs.empty()) fail(ErrorKind::kParameter, "corpus evaluation needs at least one utterance");
  std::size_t matched = 0, detected = 0, reference = 0;
  for (const auto& [ref, det] : pairs) {
    matched += match_boundaries(ref, det, cfg).size();
    detected += det.size();
    reference += ref.size();
  }
  return report_from_counts(matched, detected, reference, cfg.tolerance_ms);
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["tolerance_ms"] = report.tolerance_ms;
  j["matched"] = report.matched;
  j["detected"] = report.detected;
  j["reference"] = report.reference;
  j["precision_pct"] = report.precision_pct;
  j["recall_pct"] = report.recall_pct;
  j["fscore_pct"] = report.fscore_pct;
  return j.dump();
}

EvalReport report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    EvalReport r;
    r.tolerance_ms = j.at("tolerance_ms").get<double>();
    r.matched = j.at("matched").get<std::size_t>();
    r.detected = j.at("detected").get<std::size_t>();
    r.reference = j.at("reference").get<std::size_t>();
    r.precision_pct = j.at("precision_pct").get<double>();
    r.recall_pct = j.at("recall_pct").get<double>();
    r.fscore_pct = j.at("fscore_pct").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, std::string("report JSON: ") + e.what());
  }
}

}  // namespace stmseg
