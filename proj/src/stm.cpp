#include "stmseg/stm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "stmseg/error.hpp"
#include "stmseg/kernels.hpp"

namespace stmseg {
namespace {

void check_features(const FeatureSequence& features) {
  if (features.num_frames() == 0 || features.dim() == 0)
    fail(ErrorKind::kParameter, "feature sequence is empty");
}

}  // namespace

FeatureMatrix spectral_rate(const FeatureSequence& features, int halfwidth) {
  check_features(features);
  if (halfwidth < 1) fail(ErrorKind::kParameter, "regression half-width must be >= 1");
  const auto& k = kernels::active();
  const auto m = static_cast<std::ptrdiff_t>(features.num_frames());
  const std::size_t dim = features.dim();

  double denom = 0.0;
  for (int n = -halfwidth; n <= halfwidth; ++n) denom += static_cast<double>(n) * n;

  FeatureMatrix rate(features.num_frames(), dim);
  for (std::ptrdiff_t t = 0; t < m; ++t) {
    double* out = rate.row(static_cast<std::size_t>(t)).data();
    // Weights are antisymmetric, so pair frame t+n with t-n; identical frames
    // cancel exactly.
    for (int n = 1; n <= halfwidth; ++n) {
      const auto ahead = static_cast<std::size_t>(std::min<std::ptrdiff_t>(t + n, m - 1));
      const auto behind = static_cast<std::size_t>(std::max<std::ptrdiff_t>(t - n, 0));
      k.axpy_diff(static_cast<double>(n) / denom, features.frames.row(ahead).data(),
                  features.frames.row(behind).data(), out, dim);
    }
  }
  return rate;
}

StmContour stm_contour(const FeatureSequence& features, const StmConfig& cfg) {
  const FeatureMatrix rate = spectral_rate(features, cfg.regression_halfwidth);
  const auto& k = kernels::active();
  StmContour contour;
  contour.hop_s = features.hop_s;
  contour.frame_len_s = features.frame_len_s;
  contour.t0_s = features.t0_s;
  contour.values.resize(rate.rows());
  const double dim = static_cast<double>(rate.cols());
  for (std::size_t t = 0; t < rate.rows(); ++t)
    contour.values[t] = k.sum_squares(rate.row(t).data(), rate.cols()) / dim;
  return contour;
}

double contour_median(std::span<const double> values) {
  if (values.empty()) fail(ErrorKind::kParameter, "median of an empty contour");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

StmContour floor_at(const StmContour& contour, double tau) {
  StmContour out = contour;
  kernels::active().floor_at(out.values.data(), out.values.size(), tau);
  out.floored = true;
  out.tau_m = tau;
  return out;
}

StmContour median_floor(const StmContour& contour) {
  if (contour.floored)
    fail(ErrorKind::kParameter, "contour is already floored");
  return floor_at(contour, contour_median(contour.values));
}

std::vector<std::size_t> peak_indices(std::span<const double> values) {
  std::vector<std::size_t> peaks;
  const std::size_t n = values.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(values[i] > values[i - 1])) {
      ++i;
      continue;
    }
    std::size_t end = i;  // last index of the run of equal values
    while (end + 1 < n && values[end + 1] == values[i]) ++end;
    if (end + 1 < n && values[end + 1] < values[i]) peaks.push_back(i + (end - i) / 2);
    i = end + 1;
  }
  return peaks;
}

BoundarySet pick_peaks(const StmContour& contour) {
  std::vector<double> times;
  for (std::size_t idx : peak_indices(contour.values))
    times.push_back(contour.frame_center_s(idx));
  return BoundarySet(std::move(times));
}

BoundarySet segment_features(const FeatureSequence& features, const StmConfig& cfg) {
  const StmContour raw = stm_contour(features, cfg);
  return pick_peaks(cfg.postprocess ? median_floor(raw) : raw);
}

BoundarySet segment(const AudioBuffer& audio, FeatureKind kind,
                    const FrameConfig& frame_cfg, const StmConfig& stm_cfg) {
  return segment_features(extract_features(kind, audio, frame_cfg), stm_cfg);
}

void write_contour_csv(const StmContour& raw, const StmContour* floored,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << "frame_index,t_center_s,stm_value";
  if (floored != nullptr) out << ",stm_floored";
  out << '\n';
  char buf[96];
  for (std::size_t m = 0; m < raw.values.size(); ++m) {
    std::snprintf(buf, sizeof buf, "%zu,%.6f,%.17g", m, raw.frame_center_s(m), raw.values[m]);
    out << buf;
    if (floored != nullptr) {
      std::snprintf(buf, sizeof buf, ",%.17g", floored->values.at(m));
      out << buf;
    }
    out << '\n';
  }
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace stmseg
