#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "stmseg/audio.hpp"
#include "stmseg/features.hpp"

namespace stmseg {

struct StmConfig {
  int regression_halfwidth = 2;
  bool postprocess = true;
};

struct StmContour {
  std::vector<double> values;
  double hop_s = 0.0;
  double frame_len_s = 0.0;
  double t0_s = 0.0;
  bool floored = false;
  std::optional<double> tau_m;

  /// Centre of frame m in seconds; boundary times are frame centres.
  double frame_center_s(std::size_t m) const noexcept {
    return t0_s + static_cast<double>(m) * hop_s + frame_len_s / 2.0;
  }
};

/// Regression slope of every coefficient trajectory over a +/-halfwidth frame
/// window. Frame indices outside [0, m-1] are clamped to the nearest edge.
FeatureMatrix spectral_rate(const FeatureSequence& features, int halfwidth);

/// STM(m) = sum_d a_d(m)^2 / D.
StmContour stm_contour(const FeatureSequence& features, const StmConfig& cfg);

/// Median of the values; mean of the two central order statistics when the
/// length is even.
double contour_median(std::span<const double> values);

/// Raises every value at or below the contour median to the median. The
/// input must not already be floored.
StmContour median_floor(const StmContour& contour);

/// Same flooring against an explicit threshold; used to re-apply a recorded
/// tau to an already floored contour.
StmContour floor_at(const StmContour& contour, double tau);

/// Indices of strict local maxima. A maximal run of equal values that is
/// strictly above both flanking values counts once, at floor((a + b) / 2).
/// The first and last index are never peaks.
std::vector<std::size_t> peak_indices(std::span<const double> values);

BoundarySet pick_peaks(const StmContour& contour);

/// Contour -> (median floor) -> peaks, starting from precomputed features.
BoundarySet segment_features(const FeatureSequence& features,
                             const StmConfig& cfg);

BoundarySet segment(const AudioBuffer& audio, FeatureKind kind,
                    const FrameConfig& frame_cfg, const StmConfig& stm_cfg);

/// CSV `frame_index,t_center_s,stm_value`; when `floored` is given a
/// `stm_floored` column is appended.
void write_contour_csv(const StmContour& raw, const StmContour* floored,
                       const std::filesystem::path& path);

}  // namespace stmseg
