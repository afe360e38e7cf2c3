#include "stmseg/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "spectrum.hpp"
#include "stmseg/error.hpp"
#include "stmseg/kernels.hpp"

namespace stmseg {

namespace detail {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> hamming_window(std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (length == 1) return w;
  const double denom = static_cast<double>(length - 1);
  for (std::size_t i = 0; i < length; ++i)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
  return w;
}

namespace {
// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

PowerSpectrum::PowerSpectrum(std::size_t frame_len, std::size_t fft_size)
    : fft_size_(fft_size) {
  if (frame_len > fft_size)
    fail(ErrorKind::kParameter, "FFT size smaller than frame length");
  std::lock_guard lock(planner_mutex());
  in_ = fftw_alloc_real(fft_size_);
  out_ = reinterpret_cast<double*>(fftw_alloc_complex(bins()));
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(fft_size_), in_,
                               reinterpret_cast<fftw_complex*>(out_),
                               FFTW_ESTIMATE);
  if (plan_ == nullptr) fail(ErrorKind::kParameter, "FFT planning failed");
}

PowerSpectrum::~PowerSpectrum() {
  std::lock_guard lock(planner_mutex());
  if (plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

void PowerSpectrum::compute(std::span<const double> frame, std::span<double> out,
                            double floor) {
  std::copy(frame.begin(), frame.end(), in_);
  std::fill(in_ + frame.size(), in_ + fft_size_, 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_));
  kernels::active().power_spectrum(out_, out.data(), bins(), floor);
}

}  // namespace detail

FrameLayout frame_layout(const FrameConfig& cfg, int sample_rate_hz) {
  if (sample_rate_hz <= 0) fail(ErrorKind::kParameter, "sample rate must be positive");
  if (!(cfg.frame_len_ms > 0.0) || !std::isfinite(cfg.frame_len_ms))
    fail(ErrorKind::kParameter, "frame length must be positive");
  if (!(cfg.overlap_ms >= 0.0) || !(cfg.overlap_ms < cfg.frame_len_ms))
    fail(ErrorKind::kParameter, "overlap must satisfy 0 <= overlap < frame length");

  const double per_ms = sample_rate_hz / 1000.0;
  const auto frame_len = static_cast<std::size_t>(std::llround(cfg.frame_len_ms * per_ms));
  const auto hop = static_cast<std::size_t>(std::llround(cfg.hop_ms() * per_ms));
  if (frame_len < 1) fail(ErrorKind::kParameter, "frame is shorter than one sample");
  if (hop < 1) fail(ErrorKind::kParameter, "hop is shorter than one sample");
  return {frame_len, hop, sample_rate_hz};
}

std::size_t frame_count(std::size_t num_samples, const FrameLayout& layout) {
  if (num_samples < layout.frame_len) return 0;
  const std::size_t full = 1 + (num_samples - layout.frame_len) / layout.hop;
  const std::size_t covered = (full - 1) * layout.hop + layout.frame_len;
  const std::size_t remainder = num_samples - covered;
  return 2 * remainder >= layout.hop && remainder > 0 ? full + 1 : full;
}

std::string_view to_string(FeatureKind kind) noexcept {
  return kind == FeatureKind::kPlp ? "plp" : "mfcc";
}

FeatureKind parse_feature_kind(std::string_view text) {
  if (text == "plp") return FeatureKind::kPlp;
  if (text == "mfcc") return FeatureKind::kMfcc;
  fail(ErrorKind::kParameter, "unknown feature kind '" + std::string(text) + "'");
}

FeatureMatrix frame_signal(const AudioBuffer& audio, const FrameConfig& cfg) {
  check_audio(audio);
  const FrameLayout layout = frame_layout(cfg, audio.sample_rate_hz);
  const std::size_t n = audio.samples.size();
  const std::size_t m = frame_count(n, layout);
  if (m == 0)
    fail(ErrorKind::kTooShort, std::to_string(n) + " samples, need at least " +
                                   std::to_string(layout.frame_len));
  FeatureMatrix windows(m, layout.frame_len);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t start = i * layout.hop;
    const std::size_t stop = std::min(n, start + layout.frame_len);
    std::copy(audio.samples.begin() + static_cast<std::ptrdiff_t>(start),
              audio.samples.begin() + static_cast<std::ptrdiff_t>(stop),
              windows.row(i).begin());
  }
  return windows;
}

FeatureSequence extract_features(FeatureKind kind, const AudioBuffer& audio,
                                 const FrameConfig& cfg, int dim) {
  return kind == FeatureKind::kPlp ? extract_plpcc(audio, cfg, dim)
                                   : extract_mfcc(audio, cfg, dim);
}

void write_feature_csv(const FeatureSequence& features,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << "t_start_s";
  for (std::size_t d = 1; d <= features.dim(); ++d) out << ",c" << d;
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < features.num_frames(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f",
                  features.t0_s + static_cast<double>(i) * features.hop_s);
    out << buf;
    for (double v : features.frames.row(i)) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out << buf;
    }
    out << '\n';
  }
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace stmseg
