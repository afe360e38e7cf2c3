#include "stmseg/audio.hpp"

#include <cmath>

#include "stmseg/error.hpp"

namespace stmseg {

void check_audio(const AudioBuffer& audio) {
  if (audio.sample_rate_hz <= 0)
    fail(ErrorKind::kParameter, "sample rate must be positive");
  if (audio.samples.empty())
    fail(ErrorKind::kParameter, "audio buffer is empty");
}

BoundarySet::BoundarySet(std::vector<double> times_s) : times_(std::move(times_s)) {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || times_[i] < 0.0)
      fail(ErrorKind::kParameter, "boundary times must be finite and >= 0");
    if (i > 0 && !(times_[i] > times_[i - 1]))
      fail(ErrorKind::kParameter, "boundary times must be strictly increasing");
  }
}

}  // namespace stmseg
