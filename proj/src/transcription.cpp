#include "stmseg/transcription.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stmseg/error.hpp"

namespace stmseg {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

bool parse_int(std::string_view text, std::int64_t& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

PhoneTranscription parse_phone_transcription(std::istream& in) {
  PhoneTranscription out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 3)
      parse_fail(line_no, "expected <start_sample> <end_sample> <label>");

    PhoneEntry entry;
    if (!parse_int(fields[0], entry.start_sample) ||
        !parse_int(fields[1], entry.end_sample))
      parse_fail(line_no, "non-numeric sample index");
    if (entry.start_sample < 0) parse_fail(line_no, "negative start sample");
    if (entry.end_sample <= entry.start_sample)
      parse_fail(line_no, "end sample must exceed start sample");
    // Labels may contain spaces in some corpora; keep the rest of the line.
    const auto label_begin = static_cast<std::size_t>(fields[2].data() - line.data());
    std::string_view label(line);
    label = label.substr(label_begin);
    while (!label.empty() && (label.back() == ' ' || label.back() == '\t'))
      label.remove_suffix(1);
    entry.label = std::string(label);

    if (!out.entries.empty()) {
      const auto prev_end = out.entries.back().end_sample;
      if (entry.start_sample > prev_end)
        parse_fail(line_no, "gap after sample " + std::to_string(prev_end));
      if (entry.start_sample < prev_end)
        parse_fail(line_no, "overlaps previous entry ending at " +
                                std::to_string(prev_end));
    }
    out.entries.push_back(std::move(entry));
  }
  if (out.entries.empty()) fail(ErrorKind::kParse, "transcription has no entries");
  return out;
}

PhoneTranscription read_phone_transcription(const std::filesystem::path& path,
                                            int sample_rate_hz) {
  if (sample_rate_hz <= 0) fail(ErrorKind::kParameter, "sample rate must be positive");
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  try {
    return parse_phone_transcription(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

BoundarySet reference_boundaries(const PhoneTranscription& transcription,
                                 int sample_rate_hz) {
  if (sample_rate_hz <= 0) fail(ErrorKind::kParameter, "sample rate must be positive");
  std::vector<double> times;
  const auto& entries = transcription.entries;
  for (std::size_t i = 1; i < entries.size(); ++i)
    times.push_back(static_cast<double>(entries[i].start_sample) / sample_rate_hz);
  return BoundarySet(std::move(times));
}

void write_phone_transcription(const PhoneTranscription& transcription,
                               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  for (const auto& e : transcription.entries)
    out << e.start_sample << ' ' << e.end_sample << ' ' << e.label << '\n';
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

std::string format_boundaries(const BoundarySet& boundaries) {
  std::string text;
  char buf[64];
  for (double t : boundaries.times()) {
    std::snprintf(buf, sizeof buf, "%.6f\n", t);
    text += buf;
  }
  return text;
}

void write_boundaries(const BoundarySet& boundaries,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << format_boundaries(boundaries);
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

BoundarySet read_boundaries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<double> times;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream fields(line);
    double t = 0.0;
    if (!(fields >> t)) parse_fail(line_no, "expected a time in seconds");
    times.push_back(t);
  }
  try {
    return BoundarySet(std::move(times));
  } catch (const Error& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
}

}  // namespace stmseg
