#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "stmseg/error.hpp"
#include "stmseg/evaluation.hpp"

using namespace stmseg;

namespace {

BoundarySet random_set(std::mt19937_64& rng, std::size_t max_count) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::set<double> times;
  const std::size_t n = rng() % (max_count + 1);
  while (times.size() < n) times.insert(std::round(u(rng) * 1000.0) / 1000.0);
  return BoundarySet(std::vector<double>(times.begin(), times.end()));
}

}  // namespace

TEST_CASE("matching and scoring example") {
  const BoundarySet ref({0.100, 0.200});
  const BoundarySet det({0.105, 0.300});
  const auto pairs = match_boundaries(ref, det, {});
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].reference_s == 0.100);
  CHECK(pairs[0].detected_s == 0.105);
  const auto r = score(ref, det, {});
  CHECK(r.matched == 1);
  CHECK(r.precision_pct == 50.0);
  CHECK(r.recall_pct == 50.0);
  CHECK(r.fscore_pct == 50.0);
}

TEST_CASE("equidistant detections go to the earlier one") {
  const auto pairs = match_boundaries(BoundarySet({0.100}), BoundarySet({0.085, 0.115}), {});
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].detected_s == 0.085);
}

TEST_CASE("a detection exactly at the tolerance edge matches") {
  CHECK(score(BoundarySet({0.1}), BoundarySet({0.12}), {}).matched == 1);
  CHECK(score(BoundarySet({0.3}), BoundarySet({0.28}), {}).matched == 1);
  CHECK(score(BoundarySet({0.1}), BoundarySet({0.1201}), {}).matched == 0);
}

TEST_CASE("identity and zero rules") {
  const BoundarySet b({0.1, 0.5, 0.9});
  const auto perfect = score(b, b, {});
  CHECK(perfect.matched == 3);
  CHECK(perfect.fscore_pct == 100.0);

  const auto empty = score(BoundarySet{}, BoundarySet{}, {});
  CHECK(empty.precision_pct == 100.0);
  CHECK(empty.recall_pct == 100.0);
  CHECK(empty.fscore_pct == 100.0);

  const auto missed = score(b, BoundarySet{}, {});
  CHECK(missed.precision_pct == 0.0);
  CHECK(missed.recall_pct == 0.0);
  CHECK(missed.fscore_pct == 0.0);

  const auto spurious = score(BoundarySet{}, b, {});
  CHECK(spurious.precision_pct == 0.0);
  CHECK(spurious.fscore_pct == 0.0);

  const auto disjoint = score(BoundarySet({0.1}), BoundarySet({0.9}), {});
  CHECK(disjoint.fscore_pct == 0.0);
}

TEST_CASE("corpus evaluation sums counts") {
  const BoundaryPair one{BoundarySet({0.100, 0.200}), BoundarySet({0.105, 0.300})};
  const auto r = corpus_eval({one, one}, {});
  CHECK(r.matched == 2);
  CHECK(r.detected == 4);
  CHECK(r.reference == 4);
  CHECK(r.fscore_pct == 50.0);
  CHECK(corpus_eval({one}, {}) == score(one.first, one.second, {}));
  CHECK_THROWS_AS(corpus_eval({}, {}), Error);
}

TEST_CASE("matching properties on random sets") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto ref = random_set(rng, 12);
    const auto det = random_set(rng, 12);
    std::size_t previous = 0;
    for (double tol : {10.0, 20.0, 30.0, 40.0, 80.0}) {
      const auto pairs = match_boundaries(ref, det, {tol});
      std::set<double> refs, dets;
      for (const auto& p : pairs) {
        CHECK(std::abs(p.reference_s - p.detected_s) <= tol / 1000.0 + 1e-9);
        refs.insert(p.reference_s);
        dets.insert(p.detected_s);
      }
      CHECK(refs.size() == pairs.size());
      CHECK(dets.size() == pairs.size());
      CHECK(pairs.size() >= previous);
      previous = pairs.size();

      const auto r = score(ref, det, {tol});
      CHECK(r.matched <= std::min(r.detected, r.reference));
      CHECK(r.fscore_pct >= 0.0);
      CHECK(r.fscore_pct <= 100.0);
      CHECK((r.fscore_pct == 100.0) == (r.matched == r.detected && r.matched == r.reference));
      CHECK(score(ref, det, {tol}) == r);
    }
  }
}

TEST_CASE("report JSON round trip") {
  const auto r = report_from_counts(7, 9, 11, 30.0);
  const auto back = report_from_json(report_to_json(r));
  CHECK(back == r);
  CHECK_THROWS_AS(report_from_json("{\"matched\": 1}"), Error);
  CHECK_THROWS_AS(report_from_json("not json"), Error);
}

TEST_CASE("invalid tolerance is rejected") {
  CHECK_THROWS_AS(score(BoundarySet{}, BoundarySet{}, {0.0}), Error);
  CHECK_THROWS_AS(score(BoundarySet{}, BoundarySet{}, {-5.0}), Error);
}
