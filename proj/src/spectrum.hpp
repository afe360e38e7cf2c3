#pragma once

// Internal: per-frame power spectrum shared by the PLP and MFCC front ends.

#include <cstddef>
#include <span>
#include <vector>

namespace stmseg::detail {

std::size_t next_pow2(std::size_t n);

std::vector<double> hamming_window(std::size_t length);

/// Real-input FFT of a fixed size. One instance per extraction call; not
/// shareable across threads.
class PowerSpectrum {
 public:
  PowerSpectrum(std::size_t frame_len, std::size_t fft_size);
  ~PowerSpectrum();
  PowerSpectrum(const PowerSpectrum&) = delete;
  PowerSpectrum& operator=(const PowerSpectrum&) = delete;

  std::size_t fft_size() const noexcept { return fft_size_; }
  std::size_t bins() const noexcept { return fft_size_ / 2 + 1; }

  /// Zero-pads `frame` to the FFT size and writes |X(k)|^2 + floor for
  /// k = 0..fft_size/2 into `out`.
  void compute(std::span<const double> frame, std::span<double> out,
               double floor);

 private:
  std::size_t fft_size_;
  double* in_ = nullptr;
  double* out_ = nullptr;  // interleaved complex
  void* plan_ = nullptr;
};

}  // namespace stmseg::detail
