#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "stmseg/audio.hpp"

namespace stmseg {

/// Parses `<start_sample> <end_sample> <label>` lines (LF or CRLF). Blank lines
/// are ignored. Gaps, overlaps, non-numeric fields and an empty file raise
/// kParse with the offending line number in the message.
PhoneTranscription parse_phone_transcription(std::istream& in);
PhoneTranscription read_phone_transcription(const std::filesystem::path& path,
                                            int sample_rate_hz);

/// Interior boundaries only: the shared edges between consecutive entries.
/// The utterance start and final end are not boundaries.
BoundarySet reference_boundaries(const PhoneTranscription& transcription,
                                 int sample_rate_hz);

void write_phone_transcription(const PhoneTranscription& transcription,
                               const std::filesystem::path& path);

// Boundary files: one time per line, six fractional digits, ascending.
std::string format_boundaries(const BoundarySet& boundaries);
void write_boundaries(const BoundarySet& boundaries,
                      const std::filesystem::path& path);
BoundarySet read_boundaries(const std::filesystem::path& path);

}  // namespace stmseg
