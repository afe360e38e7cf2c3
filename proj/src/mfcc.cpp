#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "spectrum.hpp"
#include "stmseg/error.hpp"
#include "stmseg/features.hpp"
#include "stmseg/kernels.hpp"

namespace stmseg {
namespace {

constexpr std::size_t kMelFilters = 26;
constexpr double kPreEmphasis = 0.97;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

struct Triangle {
  std::size_t first_bin = 0;
  std::vector<double> weights;
};

}  // namespace

FeatureSequence extract_mfcc(const AudioBuffer& audio, const FrameConfig& cfg,
                             int dim) {
  if (dim < 1 || static_cast<std::size_t>(dim) >= kMelFilters)
    fail(ErrorKind::kParameter, "MFCC dimension " + std::to_string(dim) +
                                    " outside [1, " + std::to_string(kMelFilters - 1) + "]");
  const FeatureMatrix windows = frame_signal(audio, cfg);
  const FrameLayout layout = frame_layout(cfg, audio.sample_rate_hz);
  const double rate = audio.sample_rate_hz;
  const auto& k = kernels::active();

  const std::vector<double> window = detail::hamming_window(layout.frame_len);
  detail::PowerSpectrum spectrum(layout.frame_len, detail::next_pow2(layout.frame_len));
  const std::size_t bins = spectrum.bins();

  const double mel_top = hz_to_mel(rate / 2.0);
  std::vector<Triangle> filters(kMelFilters);
  for (std::size_t f = 0; f < kMelFilters; ++f) {
    const double step = mel_top / static_cast<double>(kMelFilters + 1);
    const double left = mel_to_hz(step * static_cast<double>(f));
    const double centre = mel_to_hz(step * static_cast<double>(f + 1));
    const double right = mel_to_hz(step * static_cast<double>(f + 2));
    std::vector<double> full(bins, 0.0);
    for (std::size_t b = 0; b < bins; ++b) {
      const double hz = static_cast<double>(b) * rate / static_cast<double>(spectrum.fft_size());
      if (hz > left && hz <= centre)
        full[b] = (hz - left) / (centre - left);
      else if (hz > centre && hz < right)
        full[b] = (right - hz) / (right - centre);
    }
    std::size_t lo = 0;
    while (lo < bins && full[lo] == 0.0) ++lo;
    std::size_t hi = bins;
    while (hi > lo && full[hi - 1] == 0.0) --hi;
    filters[f].first_bin = lo;
    filters[f].weights.assign(full.begin() + static_cast<std::ptrdiff_t>(lo),
                              full.begin() + static_cast<std::ptrdiff_t>(hi));
  }

  const auto order = static_cast<std::size_t>(dim);
  std::vector<std::vector<double>> dct(order, std::vector<double>(kMelFilters));
  const double norm = std::sqrt(2.0 / static_cast<double>(kMelFilters));
  for (std::size_t c = 0; c < order; ++c)
    for (std::size_t j = 0; j < kMelFilters; ++j)
      dct[c][j] = norm * std::cos(std::numbers::pi * static_cast<double>(c + 1) *
                                  (static_cast<double>(j) + 0.5) /
                                  static_cast<double>(kMelFilters));

  FeatureSequence out;
  out.frames = FeatureMatrix(windows.rows(), order);
  out.hop_s = static_cast<double>(layout.hop) / rate;
  out.frame_len_s = static_cast<double>(layout.frame_len) / rate;

  std::vector<double> emphasized(layout.frame_len);
  std::vector<double> frame(layout.frame_len);
  std::vector<double> power(bins);
  std::vector<double> log_energy(kMelFilters);
  for (std::size_t i = 0; i < windows.rows(); ++i) {
    const auto raw = windows.row(i);
    // Pre-emphasis stays inside the frame so frames depend only on their own
    // samples.
    emphasized[0] = raw[0] - kPreEmphasis * raw[0];
    for (std::size_t n = 1; n < raw.size(); ++n)
      emphasized[n] = raw[n] - kPreEmphasis * raw[n - 1];
    k.multiply(emphasized.data(), window.data(), frame.data(), frame.size());
    spectrum.compute(frame, power, 0.0);
    for (std::size_t f = 0; f < kMelFilters; ++f) {
      const auto& tri = filters[f];
      const double energy = tri.weights.empty()
          ? 0.0
          : k.dot(tri.weights.data(), power.data() + tri.first_bin, tri.weights.size());
      log_energy[f] = std::log(std::max(energy, kSpectrumFloor));
    }
    for (std::size_t c = 0; c < order; ++c)
      out.frames(i, c) = k.dot(dct[c].data(), log_energy.data(), kMelFilters);
  }
  return out;
}

}  // namespace stmseg
