#include "stmseg/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "stmseg/error.hpp"

namespace stmseg {
namespace {

constexpr double kPcmScale = 32768.0;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                         std::istreambuf_iterator<char>()};
  const std::string where = " in " + path.string();

  if (bytes.size() >= 7 && std::memcmp(bytes.data(), "NIST_1A", 7) == 0)
    fail(ErrorKind::kUnsupportedFormat,
         "NIST SPHERE header" + where +
             "; convert to RIFF first (e.g. sox -t sph in.wav -t wav out.wav)");
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0)
    fail(ErrorKind::kFormat, "missing RIFF magic" + where);
  if (std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    fail(ErrorKind::kFormat, "missing WAVE form type" + where);

  bool have_fmt = false;
  int sample_rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) {
      // Streamed writers leave 0xFFFFFFFF in the data size; accept a
      // truncated data chunk, reject anything else.
      if (std::memcmp(chunk, "data", 4) != 0)
        fail(ErrorKind::kFormat, "chunk overruns file" + where);
    }
    const std::size_t avail = std::min<std::size_t>(size, bytes.size() - body);

    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (avail < 16) fail(ErrorKind::kFormat, "fmt chunk too small" + where);
      const std::uint16_t tag = read_u16(bytes.data() + body);
      const std::uint16_t channels = read_u16(bytes.data() + body + 2);
      const std::uint32_t rate = read_u32(bytes.data() + body + 4);
      const std::uint16_t bits = read_u16(bytes.data() + body + 14);
      if (tag != 1)
        fail(ErrorKind::kUnsupportedFormat,
             "format tag " + std::to_string(tag) + " is not PCM" + where);
      if (channels != 1)
        fail(ErrorKind::kUnsupportedFormat,
             std::to_string(channels) + " channels, expected mono" + where);
      if (bits != 16)
        fail(ErrorKind::kUnsupportedFormat,
             std::to_string(bits) + "-bit samples, expected 16" + where);
      if (rate == 0 || rate > 0x7fffffffu)
        fail(ErrorKind::kFormat, "invalid sample rate" + where);
      sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = avail;
    }
    pos = body + avail + (avail & 1u);
  }

  if (!have_fmt) fail(ErrorKind::kFormat, "no fmt chunk" + where);
  if (data == nullptr) fail(ErrorKind::kFormat, "no data chunk" + where);
  const std::size_t count = data_size / 2;
  if (count == 0) fail(ErrorKind::kFormat, "no samples" + where);

  AudioBuffer audio;
  audio.sample_rate_hz = sample_rate;
  audio.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto code = static_cast<std::int16_t>(read_u16(data + 2 * i));
    audio.samples[i] = code / kPcmScale;
  }
  return audio;
}

void write_wav(const AudioBuffer& audio, const std::filesystem::path& path) {
  check_audio(audio);
  const std::size_t data_bytes = audio.samples.size() * 2;
  if (data_bytes > 0xffffffffu - 36)
    fail(ErrorKind::kParameter, "audio too long for a RIFF container");

  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(36 + data_bytes));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(audio.sample_rate_hz));
  put_u32(out, static_cast<std::uint32_t>(audio.sample_rate_hz) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, static_cast<std::uint32_t>(data_bytes));
  for (double s : audio.samples) {
    if (!std::isfinite(s)) fail(ErrorKind::kParameter, "non-finite sample");
    const double code = std::clamp(std::nearbyint(s * kPcmScale), -32768.0, 32767.0);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(code)));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) fail(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace stmseg
