#include <doctest.h>

#include <random>
#include <sstream>
#include <string>

#include "stmseg/error.hpp"
#include "stmseg/transcription.hpp"
#include "test_support.hpp"

using namespace stmseg;

namespace {

PhoneTranscription parse(const std::string& text) {
  std::istringstream in(text);
  return parse_phone_transcription(in);
}

std::string parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParse);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

}  // namespace

TEST_CASE("PHN lines parse into contiguous entries") {
  const auto t = parse("0 800 sil\n800 2400 aa");
  REQUIRE(t.entries.size() == 2);
  CHECK(t.entries[0].label == "sil");
  CHECK(t.entries[1].start_sample == 800);
  CHECK(t.entries[1].end_sample == 2400);
  CHECK(reference_boundaries(t, 8000) == BoundarySet({0.1}));
}

TEST_CASE("CRLF line endings and blank lines are accepted") {
  const auto t = parse("0 800 h#\r\n\r\n800 1600 ix\r\n");
  REQUIRE(t.entries.size() == 2);
  CHECK(t.entries[0].label == "h#");
  CHECK(t.entries[1].label == "ix");
}

TEST_CASE("parse errors name the offending line") {
  CHECK(parse_error("0 800 sil\n900 2400 aa").find("line 2") != std::string::npos);
  CHECK(parse_error("0 800 sil\n700 2400 aa").find("overlap") != std::string::npos);
  CHECK(parse_error("0 800 sil\n800 x aa").find("line 2") != std::string::npos);
  CHECK(parse_error("0 800\n").find("line 1") != std::string::npos);
  CHECK(parse_error("10 5 a\n").find("line 1") != std::string::npos);
  parse_error("");
  parse_error("\n\n");
}

TEST_CASE("reference boundaries are interior edges only") {
  const auto t = parse("0 800 a\n800 2400 b\n2400 4000 c\n");
  const BoundarySet b = reference_boundaries(t, 8000);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(b[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(reference_boundaries(parse("0 4000 sil\n"), 16000).empty());
}

TEST_CASE("any contiguous segmentation round-trips; any broken one is rejected") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> count(1, 40), len(1, 5000), start(0, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = count(rng);
    std::int64_t pos = start(rng);
    std::vector<std::int64_t> edges{pos};
    std::string text;
    for (int i = 0; i < n; ++i) {
      const std::int64_t next = pos + len(rng);
      text += std::to_string(pos) + " " + std::to_string(next) + " p" + std::to_string(i) + "\n";
      pos = next;
      edges.push_back(pos);
    }
    const auto t = parse(text);
    REQUIRE(t.entries.size() == static_cast<std::size_t>(n));
    const auto b = reference_boundaries(t, 16000);
    REQUIRE(b.size() == static_cast<std::size_t>(n - 1));
    for (int i = 1; i < n; ++i) CHECK(b[i - 1] == static_cast<double>(edges[i]) / 16000.0);

    if (n >= 2) {
      // Shift one interior start by +-1 to open a gap or an overlap.
      std::istringstream lines(text);
      std::string rebuilt, line;
      const int victim = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
      for (int i = 0; std::getline(lines, line); ++i) {
        if (i == victim) {
          std::istringstream f(line);
          std::int64_t s, e;
          std::string lab;
          f >> s >> e >> lab;
          s += (rng() & 1) ? 1 : -1;
          if (s >= e) s = e + 1;  // still broken, just differently
          line = std::to_string(s) + " " + std::to_string(e) + " " + lab;
        }
        rebuilt += line + "\n";
      }
      CHECK_THROWS_AS(parse(rebuilt), Error);
    }
  }
}

TEST_CASE("boundary files use six fractional digits") {
  testing::TempDir dir;
  const BoundarySet b({0.1, 0.3, 1.25});
  CHECK(format_boundaries(b) == "0.100000\n0.300000\n1.250000\n");
  write_boundaries(b, dir / "b.txt");
  CHECK(read_boundaries(dir / "b.txt") == b);
  CHECK(format_boundaries(BoundarySet{}).empty());
}

TEST_CASE("BoundarySet enforces strict ordering") {
  CHECK_THROWS_AS(BoundarySet({0.2, 0.1}), Error);
  CHECK_THROWS_AS(BoundarySet({0.1, 0.1}), Error);
  CHECK_THROWS_AS(BoundarySet({-0.1}), Error);
}

TEST_CASE("phone transcription files round trip") {
  testing::TempDir dir;
  const auto t = parse("0 800 sil\n800 2400 aa\n2400 2500 t\n");
  write_phone_transcription(t, dir / "x.phn");
  const auto back = read_phone_transcription(dir / "x.phn", 16000);
  REQUIRE(back.entries.size() == 3);
  CHECK(back.entries[2].label == "t");
  CHECK(back.entries[2].end_sample == 2500);
  CHECK_THROWS_AS(read_phone_transcription(dir / "missing.phn", 16000), Error);
}
