#pragma once

#include <stdexcept>
#include <string>

namespace stmseg {

enum class ErrorKind {
  kIo,
  kFormat,
  kUnsupportedFormat,
  kParse,
  kParameter,
  kTooShort,
  kDegenerateSignal,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace stmseg
