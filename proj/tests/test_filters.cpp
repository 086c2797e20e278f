/*
 * Copyright 2026 socsum contributors.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include <catch2/catch_amalgamated.hpp>

#include "socsum/filters.hpp"
#include "support.hpp"

using namespace socsum;
using Catch::Approx;

namespace {

Shot shot_of(std::int64_t frames) { return Shot{0, 0, frames}; }

int duration_class(const ElementaryVector& v) {
  if (v[kDurVeryShort]) return 0;
  if (v[kDurShort]) return 1;
  if (v[kDurMedium]) return 2;
  return 3;
}

ElementaryVector eval_frames(std::int64_t frames, Rational fps) {
  return evaluate_elementary(shot_of(frames), ShotDescriptors{}, fps, HighlightParams{});
}

}  // namespace

TEST_CASE("elementary names round-trip") {
  for (int i = 0; i < kElementaryCount; ++i)
    CHECK(elementary_from_name(kElementaryNames[static_cast<std::size_t>(i)]) == i);
  CHECK_THROWS_AS(elementary_from_name("goal"), config_error);
  CHECK(kElementaryCount == 16);
}

TEST_CASE("duration classes split at exact frame counts") {
  Rational pal{25, 1};
  // boundaries land on the right side of each threshold
  CHECK(duration_class(eval_frames(49, pal)) == 0);
  CHECK(duration_class(eval_frames(50, pal)) == 1);  // exactly 2 s is short
  CHECK(duration_class(eval_frames(149, pal)) == 1);
  CHECK(duration_class(eval_frames(150, pal)) == 2);  // exactly 6 s is medium
  CHECK(duration_class(eval_frames(374, pal)) == 2);
  CHECK(duration_class(eval_frames(375, pal)) == 3);  // exactly 15 s is long

  // 2 s at 30000/1001 fps is 60.06 frames: 60 frames fall just short
  Rational ntsc{30000, 1001};
  CHECK(duration_class(eval_frames(59, ntsc)) == 0);
  CHECK(duration_class(eval_frames(60, ntsc)) == 1);

  // exactly one duration class is ever set
  testsupport::Rng rng(404);
  for (int i = 0; i < 300; ++i) {
    auto v = eval_frames(testsupport::rand_int(rng, 1, 1000), pal);
    int set = static_cast<int>(v[kDurVeryShort]) + static_cast<int>(v[kDurShort]) +
              static_cast<int>(v[kDurMedium]) + static_cast<int>(v[kDurLong]);
    CHECK(set == 1);
  }
}

TEST_CASE("high motion requires activity strictly over the floor") {
  ShotDescriptors d;
  HighlightParams params;
  d.mean_activity = 1.0;
  CHECK_FALSE(evaluate_elementary(shot_of(100), d, {25, 1}, params)[kHighMotion]);
  d.mean_activity = std::nextafter(1.0, 2.0);
  CHECK(evaluate_elementary(shot_of(100), d, {25, 1}, params)[kHighMotion]);
}

TEST_CASE("descriptor fields map one-to-one onto elementary outcomes") {
  ShotDescriptors d;
  d.long_shot = true;
  d.whistle = true;
  d.persons = true;
  d.audio.power_vh = true;
  d.audio.intra_inc_50 = true;
  d.audio.inter_inc_100 = true;
  auto v = evaluate_elementary(shot_of(100), d, {25, 1}, HighlightParams{});
  CHECK(v[kLongShot]);
  CHECK_FALSE(v[kZoom]);
  CHECK(v[kWhistle]);
  CHECK_FALSE(v[kReplay]);
  CHECK(v[kPersons]);
  CHECK(v[kAudioPowerVH]);
  CHECK_FALSE(v[kAudioPowerH]);
  CHECK(v[kAudioIntraInc50]);
  CHECK_FALSE(v[kAudioIntraInc100]);
  CHECK(v[kAudioInterInc100]);
  CHECK_FALSE(v[kAudioInterInc50]);
}

TEST_CASE("local score is a weighted sum with signed weights") {
  AdvancedFilterSpec spec;
  spec.name = "test";
  spec.weight[kReplay] = 3.0;
  spec.weight[kDurVeryShort] = -1.0;

  ElementaryVector v;
  v[kReplay] = true;
  v[kDurVeryShort] = true;
  std::vector<ElementaryVector> shots{v};
  CHECK(local_score(spec, shots, 0) == Approx(2.0));

  // an unweighted outcome contributes nothing
  shots[0][kWhistle] = true;
  CHECK(local_score(spec, shots, 0) == Approx(2.0));
}

TEST_CASE("neighbour terms outside the shot list contribute zero") {
  AdvancedFilterSpec spec;
  spec.name = "edges";
  spec.neighbors.push_back({+1, kPersons, 1.5});
  spec.neighbors.push_back({-1, kPersons, 2.5});

  ElementaryVector people;
  people[kPersons] = true;
  std::vector<ElementaryVector> shots{people, people, people};
  CHECK(local_score(spec, shots, 0) == Approx(1.5));  // no shot at -1
  CHECK(local_score(spec, shots, 1) == Approx(4.0));
  CHECK(local_score(spec, shots, 2) == Approx(2.5));  // no shot at +1
}

TEST_CASE("the goal preset ranks a scripted goal sequence first") {
  AdvancedFilterSpec goal = goal_filter_preset();
  CHECK(goal.name == "goals");
  CHECK(goal.percent == Approx(100.0));
  goal.validate();

  // quiet play, the goal, the celebration close-up, a replay with players
  // still on screen, a second replay
  std::vector<ElementaryVector> shots(5);
  shots[1][kAudioPowerVH] = true;
  shots[1][kAudioIntraInc100] = true;
  shots[2][kPersons] = true;
  shots[3][kPersons] = true;
  shots[3][kReplay] = true;
  shots[4][kReplay] = true;

  ScoreTable t = score_shots({goal}, shots);
  REQUIRE(t.local.size() == 1);
  // own terms 2+2, persons at +1 and +2, replay at +2
  CHECK(t.local[0][1] == Approx(8.0));
  // the quiet shot still sees the celebration two shots ahead
  CHECK(t.local[0][0] == Approx(1.5));
  CHECK(t.local[0][2] == Approx(3.5));
  CHECK(t.local[0][3] == Approx(1.0));
  CHECK(t.local[0][4] == Approx(0.0));
  for (std::size_t s = 0; s < 5; ++s) {
    CHECK(t.global_score[s] == Approx(t.local[0][s]));
    if (s != 1) CHECK(t.local[0][1] > t.local[0][s]);
  }
}

TEST_CASE("a silent uneventful stream scores zero everywhere") {
  std::vector<ElementaryVector> shots(4);
  ScoreTable t = score_shots({goal_filter_preset()}, shots);
  for (double g : t.global_score) CHECK(g == 0.0);
}

TEST_CASE("the global score is the sum of local scores across filters") {
  testsupport::Rng rng(515);
  std::vector<AdvancedFilterSpec> filters(3);
  for (std::size_t f = 0; f < filters.size(); ++f) {
    filters[f].name = "f" + std::to_string(f);
    for (int i = 0; i < kElementaryCount; ++i)
      filters[f].weight[static_cast<std::size_t>(i)] = testsupport::rand_int(rng, -2, 3);
    filters[f].neighbors.push_back({testsupport::rand_int(rng, -2, 2),
                                    testsupport::rand_int(rng, 0, kElementaryCount - 1), 0.5});
  }
  std::vector<ElementaryVector> shots(12);
  for (auto& v : shots)
    for (int i = 0; i < kElementaryCount; ++i) v[i] = testsupport::rand_int(rng, 0, 1) == 1;

  ScoreTable t = score_shots(filters, shots);
  REQUIRE(t.local.size() == 3);
  for (std::size_t s = 0; s < shots.size(); ++s) {
    double sum = 0.0;
    for (std::size_t f = 0; f < filters.size(); ++f) {
      CHECK(t.local[f][s] == local_score(filters[f], shots, s));
      sum += t.local[f][s];
    }
    CHECK(t.global_score[s] == Approx(sum));
  }
}

TEST_CASE("scaling every weight preserves the ranking") {
  testsupport::Rng rng(626);
  for (int iter = 0; iter < 50; ++iter) {
    AdvancedFilterSpec spec;
    spec.name = "scaled";
    for (int i = 0; i < kElementaryCount; ++i)
      spec.weight[static_cast<std::size_t>(i)] = testsupport::rand_int(rng, 0, 3);
    spec.neighbors.push_back({1, kReplay, static_cast<double>(testsupport::rand_int(rng, 1, 2))});

    AdvancedFilterSpec doubled = spec;
    for (auto& w : doubled.weight) w *= 2.0;
    for (auto& t : doubled.neighbors) t.weight *= 2.0;

    std::vector<ElementaryVector> shots(8);
    for (auto& v : shots)
      for (int i = 0; i < kElementaryCount; ++i) v[i] = testsupport::rand_int(rng, 0, 1) == 1;

    for (std::size_t s = 0; s < shots.size(); ++s)
      CHECK(local_score(doubled, shots, s) == 2.0 * local_score(spec, shots, s));
  }
}

TEST_CASE("advanced filter validation rejects useless specs") {
  AdvancedFilterSpec spec;
  CHECK_THROWS_AS(spec.validate(), config_error);  // unnamed
  spec.name = "empty";
  CHECK_THROWS_AS(spec.validate(), config_error);  // no nonzero weight
  spec.neighbors.push_back({1, kPersons, 0.0});
  CHECK_THROWS_AS(spec.validate(), config_error);  // still all zero
  spec.neighbors[0].weight = 1.0;
  CHECK_NOTHROW(spec.validate());  // a neighbour term alone suffices
  spec.percent = -5.0;
  CHECK_THROWS_AS(spec.validate(), config_error);
}
