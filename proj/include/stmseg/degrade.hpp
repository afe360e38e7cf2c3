#pragma once

#include <cstdint>
#include <random>

#include "stmseg/audio.hpp"

namespace stmseg {

struct ClipSpec {
  double percent = 10.0;  // target share of samples to clip, in (0, 100)
};

struct NoiseSpec {
  double snr_db = 10.0;
  std::uint64_t seed = 0;
};

/// Nearest-rank (100 - percent)-th percentile of |x|.
double clip_threshold(const AudioBuffer& audio, const ClipSpec& spec);

/// x if |x| < tau, tau * sgn(x) otherwise.
AudioBuffer clip_at(const AudioBuffer& audio, double tau);

AudioBuffer apply_clipping(const AudioBuffer& audio, const ClipSpec& spec);

/// Standard deviation of the noise that yields `snr_db` against the mean
/// power of the whole signal.
double noise_sigma(const AudioBuffer& audio, double snr_db);

/// Adds i.i.d. zero-mean Gaussian noise. The result is not re-clamped to
/// [-1, 1].
AudioBuffer apply_awgn(const AudioBuffer& audio, const NoiseSpec& spec);

/// Scales the signal so that max|x| equals `peak`. Silent input raises
/// kDegenerateSignal.
AudioBuffer normalize_peak(const AudioBuffer& audio, double peak);

double signal_power(const AudioBuffer& audio);

/// Deterministic standard normal stream: mt19937_64 uniforms fed through the
/// Box-Muller transform, both outputs of each pair used.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed);
  double next();

 private:
  double uniform_open();

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace stmseg
