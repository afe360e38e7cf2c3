#include "stmseg/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "stmseg/error.hpp"
#include "stmseg/kernels.hpp"

namespace stmseg {
namespace {

double peak_magnitude(const AudioBuffer& audio) {
  double peak = 0.0;
  for (double s : audio.samples) peak = std::max(peak, std::abs(s));
  return peak;
}

void require_signal(const AudioBuffer& audio) {
  check_audio(audio);
  if (!(peak_magnitude(audio) > 0.0))
    fail(ErrorKind::kDegenerateSignal, "signal is all zeros");
}

}  // namespace

double clip_threshold(const AudioBuffer& audio, const ClipSpec& spec) {
  if (!(spec.percent > 0.0 && spec.percent < 100.0))
    fail(ErrorKind::kParameter, "clipping percent must lie in (0, 100)");
  require_signal(audio);
  std::vector<double> mags(audio.samples.size());
  std::transform(audio.samples.begin(), audio.samples.end(), mags.begin(),
                 [](double s) { return std::abs(s); });
  std::sort(mags.begin(), mags.end());
  const double n = static_cast<double>(mags.size());
  // Nearest rank of the (100 - p)-th percentile. The product is formed before
  // dividing by 100 so integer-valued ranks stay exact.
  const double exact_rank = (100.0 - spec.percent) * n / 100.0;
  auto rank = static_cast<std::size_t>(std::ceil(exact_rank));
  rank = std::clamp<std::size_t>(rank, 1, mags.size());
  return mags[rank - 1];
}

AudioBuffer clip_at(const AudioBuffer& audio, double tau) {
  if (!(tau >= 0.0)) fail(ErrorKind::kParameter, "clipping threshold must be >= 0");
  AudioBuffer out = audio;
  kernels::active().clip_symmetric(out.samples.data(), out.samples.size(), tau);
  return out;
}

AudioBuffer apply_clipping(const AudioBuffer& audio, const ClipSpec& spec) {
  return clip_at(audio, clip_threshold(audio, spec));
}

double signal_power(const AudioBuffer& audio) {
  check_audio(audio);
  return kernels::active().sum_squares(audio.samples.data(), audio.samples.size()) /
         static_cast<double>(audio.samples.size());
}

double noise_sigma(const AudioBuffer& audio, double snr_db) {
  if (!std::isfinite(snr_db)) fail(ErrorKind::kParameter, "SNR must be finite");
  require_signal(audio);
  return std::sqrt(signal_power(audio) / std::pow(10.0, snr_db / 10.0));
}

AudioBuffer apply_awgn(const AudioBuffer& audio, const NoiseSpec& spec) {
  const double sigma = noise_sigma(audio, spec.snr_db);
  GaussianSource gauss(spec.seed);
  AudioBuffer out = audio;
  for (double& s : out.samples) s += sigma * gauss.next();
  return out;
}

AudioBuffer normalize_peak(const AudioBuffer& audio, double peak) {
  if (!(peak > 0.0)) fail(ErrorKind::kParameter, "target peak must be positive");
  require_signal(audio);
  const double gain = peak / peak_magnitude(audio);
  AudioBuffer out = audio;
  for (double& s : out.samples) s *= gain;
  return out;
}

GaussianSource::GaussianSource(std::uint64_t seed) : engine_(seed) {}

double GaussianSource::uniform_open() {
  // 53 random mantissa bits, shifted off zero so log() stays finite.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace stmseg
