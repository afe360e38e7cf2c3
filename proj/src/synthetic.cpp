#include "stmseg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "stmseg/degrade.hpp"
#include "stmseg/error.hpp"

namespace stmseg {
namespace {

struct Partial {
  std::int64_t hz = 0;
  double amplitude = 1.0;
  double phase = 0.0;
};

constexpr std::int64_t kCycleHz = 100;  // 1 / default hop

// Partials are rendered from an exact integer phase, (hz * n) mod rate, so a
// signal whose partials are multiples of rate / hop repeats bit-for-bit every
// hop and yields identical analysis frames.
std::vector<double> multisine(std::size_t duration, int rate,
                              const std::vector<Partial>& partials) {
  std::vector<double> out(duration, 0.0);
  for (const auto& p : partials) {
    for (std::size_t n = 0; n < duration; ++n) {
      const auto cycle = (p.hz * static_cast<std::int64_t>(n)) % rate;
      out[n] += p.amplitude *
                std::sin(2.0 * std::numbers::pi * static_cast<double>(cycle) / rate + p.phase);
    }
  }
  return out;
}

// Two-pole resonator driven by white Gaussian noise.
std::vector<double> band_noise(std::size_t duration, int rate, double centre_hz,
                               double bandwidth_hz, std::uint64_t seed) {
  const double r = std::exp(-std::numbers::pi * bandwidth_hz / rate);
  const double theta = 2.0 * std::numbers::pi * centre_hz / rate;
  const double a1 = 2.0 * r * std::cos(theta);
  const double a2 = -r * r;
  GaussianSource gauss(seed);
  std::vector<double> out(duration, 0.0);
  double y1 = 0.0, y2 = 0.0;
  // Settle the filter before the segment starts.
  for (int n = 0; n < 256; ++n) {
    const double y = gauss.next() + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
  }
  for (std::size_t n = 0; n < duration; ++n) {
    const double y = gauss.next() + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    out[n] = y;
  }
  return out;
}

void scale_to_peak(std::vector<double>& x, double peak) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m > 0.0)
    for (double& v : x) v *= peak / m;
}

}  // namespace

std::vector<double> render_texture(Texture texture, std::size_t duration,
                                   int sample_rate_hz, std::uint64_t seed) {
  std::vector<double> out;
  switch (texture) {
    case Texture::kLowTone:
      out = multisine(duration, sample_rate_hz, {{200, 1.0}, {400, 0.5}, {600, 0.25}});
      break;
    case Texture::kHighChord:
      out = multisine(duration, sample_rate_hz, {{1500, 1.0}, {2500, 0.7}});
      break;
    case Texture::kBandNoise: {
      // Frozen band-limited noise: flat magnitude, random phase on every
      // 100 Hz harmonic between 0.2 and 0.4 of the sample rate.
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      std::vector<Partial> partials;
      for (std::int64_t hz = kCycleHz; 2 * hz < sample_rate_hz; hz += kCycleHz)
        if (5 * hz >= sample_rate_hz && 5 * hz <= 2 * sample_rate_hz)
          partials.push_back({hz, 1.0, phase(rng)});
      out = multisine(duration, sample_rate_hz, partials);
      break;
    }
    case Texture::kRandomBandNoise:
      out = band_noise(duration, sample_rate_hz, 0.3 * sample_rate_hz, 0.1 * sample_rate_hz, seed);
      break;
  }
  scale_to_peak(out, 1.0);
  return out;
}

SyntheticUtterance make_synthetic_utterance(std::uint64_t seed,
                                            const SyntheticConfig& cfg) {
  if (cfg.sample_rate_hz <= 0 || cfg.min_segments < 1 ||
      cfg.max_segments < cfg.min_segments || !(cfg.min_segment_ms > 0.0) ||
      cfg.max_segment_ms < cfg.min_segment_ms || !(cfg.peak > 0.0 && cfg.peak <= 1.0))
    fail(ErrorKind::kParameter, "invalid synthetic corpus configuration");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> segment_count(cfg.min_segments, cfg.max_segments);
  const auto min_len = static_cast<std::int64_t>(std::llround(cfg.min_segment_ms * cfg.sample_rate_hz / 1000.0));
  const auto max_len = static_cast<std::int64_t>(std::llround(cfg.max_segment_ms * cfg.sample_rate_hz / 1000.0));
  std::uniform_int_distribution<std::int64_t> segment_len(min_len, max_len);
  std::uniform_int_distribution<int> texture_pick(0, kTextureCount - 1);
  std::uniform_int_distribution<int> texture_step(1, kTextureCount - 1);

  SyntheticUtterance utt;
  utt.audio.sample_rate_hz = cfg.sample_rate_hz;
  const int count = segment_count(rng);
  int texture = texture_pick(rng);
  std::int64_t start = 0;
  for (int s = 0; s < count; ++s) {
    if (s > 0) texture = (texture + texture_step(rng)) % kTextureCount;
    const std::int64_t len = segment_len(rng);
    auto kind = static_cast<Texture>(texture);
    if (kind == Texture::kBandNoise && !cfg.frozen_noise) kind = Texture::kRandomBandNoise;
    auto piece = render_texture(kind, static_cast<std::size_t>(len),
                                cfg.sample_rate_hz, rng());
    for (double& v : piece) v *= cfg.peak;
    utt.audio.samples.insert(utt.audio.samples.end(), piece.begin(), piece.end());
    static constexpr const char* kLabels[kTextureCount] = {"low", "chord", "noise"};
    utt.transcription.entries.push_back({start, start + len, kLabels[texture]});
    start += len;
  }
  return utt;
}

std::vector<SyntheticUtterance> make_synthetic_corpus(std::size_t count,
                                                      std::uint64_t seed,
                                                      const SyntheticConfig& cfg) {
  std::vector<SyntheticUtterance> corpus;
  corpus.reserve(count);
  std::mt19937_64 seeds(seed);
  for (std::size_t i = 0; i < count; ++i) corpus.push_back(make_synthetic_utterance(seeds(), cfg));
  return corpus;
}

}  // namespace stmseg
