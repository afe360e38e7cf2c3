#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace stmseg {

/// Mono signal. Samples read from disk lie in [-1, +1); buffers produced by
/// additive-noise degradation may exceed that range and are saturated only
/// when written back to 16-bit PCM.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  std::size_t size() const noexcept { return samples.size(); }
  double duration_s() const noexcept {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// Throws kParameter unless the rate is positive and there is at least one
/// sample.
void check_audio(const AudioBuffer& audio);

struct PhoneEntry {
  std::int64_t start_sample = 0;
  std::int64_t end_sample = 0;
  std::string label;
};

/// Contiguous, sample-indexed phone segmentation (TIMIT .PHN layout).
struct PhoneTranscription {
  std::vector<PhoneEntry> entries;
};

/// Strictly increasing boundary times in seconds.
class BoundarySet {
 public:
  BoundarySet() = default;
  /// Throws kParameter if `times_s` is not strictly increasing or has a
  /// negative entry.
  explicit BoundarySet(std::vector<double> times_s);

  std::span<const double> times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  double operator[](std::size_t i) const { return times_[i]; }

  friend bool operator==(const BoundarySet&, const BoundarySet&) = default;

 private:
  std::vector<double> times_;
};

}  // namespace stmseg
