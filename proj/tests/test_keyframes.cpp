/*
 * Copyright 2026 socsum contributors.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include <catch2/catch_amalgamated.hpp>

#include "socsum/keyframes.hpp"
#include "support.hpp"

using namespace socsum;
using Catch::Approx;

TEST_CASE("flat activity emits the earliest minimum") {
  // shot [0,20): series covers frames 1..19, all equal, no split possible
  std::vector<double> act(20, 1.0);
  act[0] = 0.0;
  Shot shot{0, 0, 20, Transition::stream_start};
  KeyframeParams params;
  auto kf = keyframe_candidates(shot, act, params);
  CHECK(kf == std::vector<std::int64_t>{1});
}

TEST_CASE("one spike splits the shot around it") {
  std::vector<double> act(20, 1.0);
  act[0] = 0.0;
  act[10] = 50.0;  // alpha * median = 2 < 50
  Shot shot{0, 0, 20, Transition::stream_start};
  KeyframeParams params;
  auto kf = keyframe_candidates(shot, act, params);
  // split at 10; both halves are flat and emit their first frame
  CHECK(kf == std::vector<std::int64_t>{1, 11});
}

TEST_CASE("the candidate cap stops further splitting") {
  // spikes every 4 frames force deep recursion; cap cuts it at 10
  std::vector<double> act(101, 1.0);
  for (int i = 4; i < 101; i += 4) act[static_cast<std::size_t>(i)] = 100.0 + i;
  Shot shot{0, 0, 101, Transition::stream_start};
  KeyframeParams params;
  auto kf = keyframe_candidates(shot, act, params);
  CHECK(kf.size() == static_cast<std::size_t>(params.max_candidates));
  auto ref = testsupport::oracle_keyframes(act, 0, 101, params.alpha, params.max_candidates);
  CHECK(kf == ref);
}

TEST_CASE("degenerate shots fall back to the start frame") {
  std::vector<double> act(10, 1.0);
  KeyframeParams params;
  Shot one{0, 3, 4, Transition::hard_cut};
  CHECK(keyframe_candidates(one, act, params) == std::vector<std::int64_t>{3});
  // two frames leave a single-sample series: emit it
  Shot two{0, 3, 5, Transition::hard_cut};
  CHECK(keyframe_candidates(two, act, params) == std::vector<std::int64_t>{4});
}

TEST_CASE("recursive splitting matches the reference walk on random series") {
  testsupport::Rng rng(51);
  KeyframeParams params;
  for (int iter = 0; iter < 300; ++iter) {
    int n = testsupport::rand_int(rng, 2, 120);
    std::vector<double> act(static_cast<std::size_t>(n));
    for (auto& v : act) v = testsupport::rand_real(rng, 0.0, 10.0);
    if (testsupport::rand_int(rng, 0, 1)) {
      // sprinkle spikes to exercise the split path
      int spikes = testsupport::rand_int(rng, 1, 5);
      for (int s = 0; s < spikes; ++s)
        act[static_cast<std::size_t>(testsupport::rand_int(rng, 0, n - 1))] =
            testsupport::rand_real(rng, 50.0, 100.0);
    }
    std::int64_t start = testsupport::rand_int(rng, 0, n - 2);
    std::int64_t end = testsupport::rand_int(rng, static_cast<int>(start) + 1, n);
    Shot shot{0, start, end, Transition::hard_cut};
    auto got = keyframe_candidates(shot, act, params);
    auto want = testsupport::oracle_keyframes(act, start, end, params.alpha, params.max_candidates);
    CHECK(got == want);
    // candidates stay inside the shot and are strictly increasing
    REQUIRE(!got.empty());
    CHECK(got.front() >= start);
    CHECK(got.back() < end);
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1] < got[i]);
  }
}

TEST_CASE("near-duplicate keyframes are dropped against all kept ones") {
  auto seq = testsupport::make_seq(16, 16, {25, 1}, PixelFormat::rgb24p);
  testsupport::push_rgb(seq, 200, 30, 30);  // red
  testsupport::push_rgb(seq, 201, 31, 29);  // red again
  testsupport::push_rgb(seq, 30, 40, 220);  // blue
  testsupport::push_rgb(seq, 202, 33, 29);  // red a third time
  KeyframeParams params;
  auto kept = dedup_keyframes({0, 1, 2, 3}, seq, params.dedup_threshold);
  CHECK(kept == std::vector<std::int64_t>{0, 2});
}

TEST_CASE("keyframes per shot carry the mean intra-shot activity") {
  auto seq = testsupport::make_seq(16, 16);
  for (int i = 0; i < 12; ++i) testsupport::push_flat(seq, 20 * (i % 3) + 40);
  std::vector<double> act{0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0};
  std::vector<Shot> shots{{0, 0, 6, Transition::stream_start}, {1, 6, 12, Transition::hard_cut}};
  KeyframeParams params;
  auto per_shot = keyframes_for_shots(shots, act, seq, params);
  REQUIRE(per_shot.size() == 2);
  CHECK(per_shot[0].shot_id == 0);
  // shot 0 spans frames [0,6): intra-shot transitions are 1..5
  CHECK(per_shot[0].mean_activity == Approx((1 + 2 + 3 + 4 + 5) / 5.0));
  // shot 1 spans frames [6,12): transitions 7..11
  CHECK(per_shot[1].mean_activity == Approx((7 + 8 + 9 + 10 + 11) / 5.0));
  for (const auto& sk : per_shot) REQUIRE(!sk.frames.empty());
}
