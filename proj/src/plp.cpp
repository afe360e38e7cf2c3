// Perceptual linear prediction front end: Hamming window, power spectrum,
// critical-band integration on the Bark scale, equal-loudness weighting,
// cube-root compression, inverse DFT to autocorrelation, all-pole model via
// Levinson-Durbin and the LPC-to-cepstrum recursion.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "spectrum.hpp"
#include "stmseg/error.hpp"
#include "stmseg/features.hpp"
#include "stmseg/kernels.hpp"
#include "stmseg/lpc.hpp"

namespace stmseg {
namespace {

double hz_to_bark(double hz) { return 6.0 * std::asinh(hz / 600.0); }
double bark_to_hz(double bark) { return 600.0 * std::sinh(bark / 6.0); }

// Critical-band masking curve, relative Bark offset from the band centre.
double critical_band_weight(double dz) {
  if (dz < -1.3 || dz > 2.5) return 0.0;
  if (dz < -0.5) return std::pow(10.0, 2.5 * (dz + 0.5));
  if (dz <= 0.5) return 1.0;
  return std::pow(10.0, -1.0 * (dz - 0.5));
}

double equal_loudness(double hz) {
  const double w2 = std::pow(2.0 * std::numbers::pi * hz, 2);
  return ((w2 + 56.8e6) * w2 * w2) /
         (std::pow(w2 + 6.3e6, 2) * (w2 + 0.38e9));
}

struct BandSlice {
  std::size_t first_bin = 0;
  std::vector<double> weights;
};

}  // namespace

namespace detail {

/// Returns the prediction error; `lpc` receives a_1..a_p of
/// A(z) = 1 + sum a_k z^-k. Stops early (leaving zeros) if the error
/// collapses.
double levinson_durbin(std::span<const double> autocorr, std::span<double> lpc) {
  const std::size_t order = lpc.size();
  std::fill(lpc.begin(), lpc.end(), 0.0);
  double err = autocorr[0];
  if (!(err > 0.0)) return 0.0;
  std::vector<double> prev(order, 0.0);
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = autocorr[i];
    for (std::size_t j = 1; j < i; ++j) acc += lpc[j - 1] * autocorr[i - j];
    const double k = -acc / err;
    if (!std::isfinite(k) || std::abs(k) >= 1.0) break;
    std::copy(lpc.begin(), lpc.begin() + static_cast<std::ptrdiff_t>(i - 1), prev.begin());
    for (std::size_t j = 1; j < i; ++j) lpc[j - 1] = prev[j - 1] + k * prev[i - j - 1];
    lpc[i - 1] = k;
    err *= 1.0 - k * k;
  }
  return err;
}

void lpc_to_cepstrum(std::span<const double> lpc, std::span<double> cep) {
  const std::size_t p = lpc.size();
  for (std::size_t n = 1; n <= cep.size(); ++n) {
    double acc = n <= p ? -lpc[n - 1] : 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      if (n - k > p) continue;
      acc -= (static_cast<double>(k) / static_cast<double>(n)) * cep[k - 1] * lpc[n - k - 1];
    }
    cep[n - 1] = acc;
  }
}

}  // namespace detail

FeatureSequence extract_plpcc(const AudioBuffer& audio, const FrameConfig& cfg,
                              int dim) {
  const FeatureMatrix windows = frame_signal(audio, cfg);
  const FrameLayout layout = frame_layout(cfg, audio.sample_rate_hz);
  const double rate = audio.sample_rate_hz;
  const double nyquist_bark = hz_to_bark(rate / 2.0);
  const auto num_bands = static_cast<std::size_t>(std::ceil(nyquist_bark)) + 1;
  if (dim < 1 || static_cast<std::size_t>(dim) > num_bands - 1)
    fail(ErrorKind::kParameter,
         "PLP order " + std::to_string(dim) + " outside [1, " +
             std::to_string(num_bands - 1) + "] at " + std::to_string(audio.sample_rate_hz) + " Hz");
  const auto order = static_cast<std::size_t>(dim);

  const auto& k = kernels::active();
  const std::vector<double> window = detail::hamming_window(layout.frame_len);
  detail::PowerSpectrum spectrum(layout.frame_len, detail::next_pow2(layout.frame_len));
  const std::size_t bins = spectrum.bins();

  std::vector<BandSlice> bands(num_bands);
  std::vector<double> loudness(num_bands);
  for (std::size_t j = 0; j < num_bands; ++j) {
    const double centre = nyquist_bark * static_cast<double>(j) / static_cast<double>(num_bands - 1);
    std::vector<double> full(bins);
    for (std::size_t b = 0; b < bins; ++b) {
      const double hz = static_cast<double>(b) * rate / static_cast<double>(spectrum.fft_size());
      full[b] = critical_band_weight(hz_to_bark(hz) - centre);
    }
    std::size_t lo = 0;
    while (lo < bins && full[lo] == 0.0) ++lo;
    std::size_t hi = bins;
    while (hi > lo && full[hi - 1] == 0.0) --hi;
    bands[j].first_bin = lo;
    bands[j].weights.assign(full.begin() + static_cast<std::ptrdiff_t>(lo),
                            full.begin() + static_cast<std::ptrdiff_t>(hi));
    loudness[j] = equal_loudness(bark_to_hz(centre));
  }

  // Inverse DFT of the even-extended band spectrum, folded into one row of
  // weights per lag.
  const double period = 2.0 * static_cast<double>(num_bands - 1);
  std::vector<std::vector<double>> idft(order + 1, std::vector<double>(num_bands));
  for (std::size_t lag = 0; lag <= order; ++lag) {
    for (std::size_t j = 0; j < num_bands; ++j) {
      const double mult = (j == 0 || j == num_bands - 1) ? 1.0 : 2.0;
      idft[lag][j] = mult *
                     std::cos(std::numbers::pi * static_cast<double>(j * lag) /
                              static_cast<double>(num_bands - 1)) /
                     period;
    }
  }

  FeatureSequence out;
  out.frames = FeatureMatrix(windows.rows(), order);
  out.hop_s = static_cast<double>(layout.hop) / rate;
  out.frame_len_s = static_cast<double>(layout.frame_len) / rate;

  std::vector<double> frame(layout.frame_len);
  std::vector<double> power(bins);
  std::vector<double> auditory(num_bands);
  std::vector<double> autocorr(order + 1);
  std::vector<double> lpc(order);
  for (std::size_t i = 0; i < windows.rows(); ++i) {
    k.multiply(windows.row(i).data(), window.data(), frame.data(), frame.size());
    spectrum.compute(frame, power, kSpectrumFloor);
    for (std::size_t j = 0; j < num_bands; ++j) {
      const auto& band = bands[j];
      const double energy = band.weights.empty()
          ? 0.0
          : k.dot(band.weights.data(), power.data() + band.first_bin, band.weights.size());
      auditory[j] = std::cbrt(loudness[j] * energy);
    }
    // The edge bands have no reliable loudness estimate; copy neighbours.
    auditory.front() = auditory[1];
    auditory.back() = auditory[num_bands - 2];

    for (std::size_t lag = 0; lag <= order; ++lag)
      autocorr[lag] = k.dot(idft[lag].data(), auditory.data(), num_bands);
    detail::levinson_durbin(autocorr, lpc);
    detail::lpc_to_cepstrum(lpc, out.frames.row(i));
  }
  return out;
}

}  // namespace stmseg
