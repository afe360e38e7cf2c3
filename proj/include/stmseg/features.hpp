#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "stmseg/audio.hpp"

namespace stmseg {

struct FrameConfig {
  double frame_len_ms = 30.0;
  double overlap_ms = 20.0;

  double hop_ms() const noexcept { return frame_len_ms - overlap_ms; }
};

/// Frame geometry in samples for one sample rate.
struct FrameLayout {
  std::size_t frame_len = 0;
  std::size_t hop = 0;
  int sample_rate_hz = 0;
};

/// Throws kParameter when the config is inconsistent or rounds to an empty
/// frame or hop at this sample rate.
FrameLayout frame_layout(const FrameConfig& cfg, int sample_rate_hz);

/// Number of analysis windows for `num_samples`: the full windows plus one
/// zero-padded tail window when at least half a hop of samples is left over.
std::size_t frame_count(std::size_t num_samples, const FrameLayout& layout);

/// Row-major m x D matrix of per-frame coefficients.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  double& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct FeatureSequence {
  FeatureMatrix frames;
  double hop_s = 0.0;
  double frame_len_s = 0.0;
  double t0_s = 0.0;

  std::size_t num_frames() const noexcept { return frames.rows(); }
  std::size_t dim() const noexcept { return frames.cols(); }
};

enum class FeatureKind { kPlp, kMfcc };

std::string_view to_string(FeatureKind kind) noexcept;
/// Accepts "plp" or "mfcc"; anything else raises kParameter.
FeatureKind parse_feature_kind(std::string_view text);

/// Sample windows: row i holds samples [i*hop, i*hop + frame_len), zero-padded
/// past the end of the signal. Throws kTooShort below one frame.
FeatureMatrix frame_signal(const AudioBuffer& audio, const FrameConfig& cfg);

inline constexpr double kSpectrumFloor = 1e-10;

/// Perceptual linear prediction cepstra c1..cd (c0 excluded).
FeatureSequence extract_plpcc(const AudioBuffer& audio, const FrameConfig& cfg,
                              int dim = 12);

/// Mel-frequency cepstra c1..cd (c0 excluded).
FeatureSequence extract_mfcc(const AudioBuffer& audio, const FrameConfig& cfg,
                             int dim = 12);

FeatureSequence extract_features(FeatureKind kind, const AudioBuffer& audio,
                                 const FrameConfig& cfg, int dim = 12);

/// CSV with header `t_start_s,c1,...,cD`, one frame per row.
void write_feature_csv(const FeatureSequence& features,
                       const std::filesystem::path& path);

}  // namespace stmseg
