#pragma once

#include <filesystem>

#include "stmseg/audio.hpp"

namespace stmseg {

/// Reads a RIFF/WAVE file holding 16-bit mono PCM. Codes are divided by 32768.
/// Malformed containers raise kFormat; anything other than mono 16-bit PCM
/// raises kUnsupportedFormat so the caller can convert it explicitly.
AudioBuffer read_wav(const std::filesystem::path& path);

/// Writes 16-bit mono PCM. Samples are rounded to the nearest code and
/// saturated to [-32768, 32767].
void write_wav(const AudioBuffer& audio, const std::filesystem::path& path);

}  // namespace stmseg
