#include "stmseg/error.hpp"

namespace stmseg {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kIo: return "I/O error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kUnsupportedFormat: return "unsupported format";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kTooShort: return "input too short";
    case ErrorKind::kDegenerateSignal: return "degenerate signal";
  }
  return "error";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace stmseg
