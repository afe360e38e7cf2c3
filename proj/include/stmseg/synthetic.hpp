#pragma once

#include <cstdint>
#include <vector>

#include "stmseg/audio.hpp"

namespace stmseg {

/// Parameters of the generated test corpus: utterances built from segments of
/// alternating spectral textures, with the construction points serving as the
/// reference transcription.
struct SyntheticConfig {
  int sample_rate_hz = 16000;
  int min_segments = 4;
  int max_segments = 8;
  double min_segment_ms = 200.0;
  double max_segment_ms = 400.0;
  double peak = 0.5;
  /// Noise segments repeat one 10 ms cycle. When false they are fresh
  /// filtered Gaussian noise, which is not frame-stationary.
  bool frozen_noise = true;
};

struct SyntheticUtterance {
  AudioBuffer audio;
  PhoneTranscription transcription;
};

enum class Texture { kLowTone, kHighChord, kBandNoise, kRandomBandNoise };
/// Textures used when alternating segments; kRandomBandNoise only replaces
/// kBandNoise when frozen noise is off.
inline constexpr int kTextureCount = 3;

/// `duration` samples of one texture. Noise textures draw from `seed`.
std::vector<double> render_texture(Texture texture, std::size_t duration,
                                   int sample_rate_hz, std::uint64_t seed);

SyntheticUtterance make_synthetic_utterance(std::uint64_t seed,
                                            const SyntheticConfig& cfg = {});

std::vector<SyntheticUtterance> make_synthetic_corpus(
    std::size_t count, std::uint64_t seed, const SyntheticConfig& cfg = {});

}  // namespace stmseg
