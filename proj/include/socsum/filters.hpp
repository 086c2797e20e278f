/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "socsum/audio.hpp"
#include "socsum/core.hpp"

namespace socsum {

// The sixteen elementary filters, fixed order. Advanced filters weight
// these; documents and config refer to them by name.
enum Elementary : int {
  kLongShot = 0,
  kZoom,
  kWhistle,
  kReplay,
  kPersons,
  kHighMotion,
  kAudioPowerH,
  kAudioPowerVH,
  kAudioIntraInc50,
  kAudioIntraInc100,
  kAudioInterInc50,
  kAudioInterInc100,
  kDurLong,
  kDurMedium,
  kDurShort,
  kDurVeryShort,
  kElementaryCount
};

inline constexpr std::array<std::string_view, kElementaryCount> kElementaryNames = {
    "long_shot",      "zoom",           "whistle",        "replay",
    "persons",        "high_motion",    "a_power_h",      "a_power_vh",
    "a_intra_inc_50", "a_intra_inc_100","a_inter_inc_50", "a_inter_inc_100",
    "dur_long",       "dur_medium",     "dur_short",      "dur_very_short"};

inline int elementary_from_name(std::string_view name) {
  for (int i = 0; i < kElementaryCount; ++i)
    if (kElementaryNames[static_cast<std::size_t>(i)] == name) return i;
  throw config_error("unknown elementary filter: " + std::string(name));
}

// Binary outcome of every elementary filter for one shot.
struct ElementaryVector {
  std::array<bool, kElementaryCount> f{};

  bool operator[](int i) const { return f[static_cast<std::size_t>(i)]; }
  std::array<bool, kElementaryCount>::reference operator[](int i) { return f[static_cast<std::size_t>(i)]; }
};

// Everything the descriptor stages measured about one shot; the input to
// elementary filter evaluation and the payload of the descriptor document.
struct ShotDescriptors {
  bool long_shot = false;
  bool zoom = false;
  bool whistle = false;
  bool replay = false;
  bool persons = false;
  double mean_activity = 0.0;
  AudioFlags audio;
  std::vector<std::int64_t> keyframes;
  std::vector<double> keyframe_skin;
};

struct DurationThresholds {
  double very_short_max_s = 2.0;  // dur < 2s
  double short_max_s = 6.0;       // 2s <= dur < 6s
  double medium_max_s = 15.0;     // 6s <= dur < 15s; longer is dur_long
};

struct HighlightParams {
  DurationThresholds durations;
  double motion_activity_min = 1.0;  // mean activity for the high-motion flag
};

// Duration classes compare in exact integer arithmetic: a shot of F frames
// at num/den fps lasts under S seconds iff F * den < S * num.
inline ElementaryVector evaluate_elementary(const Shot& shot, const ShotDescriptors& d,
                                            Rational fps, const HighlightParams& params) {
  ElementaryVector v;
  v[kLongShot] = d.long_shot;
  v[kZoom] = d.zoom;
  v[kWhistle] = d.whistle;
  v[kReplay] = d.replay;
  v[kPersons] = d.persons;
  v[kHighMotion] = d.mean_activity > params.motion_activity_min;
  v[kAudioPowerH] = d.audio.power_h;
  v[kAudioPowerVH] = d.audio.power_vh;
  v[kAudioIntraInc50] = d.audio.intra_inc_50;
  v[kAudioIntraInc100] = d.audio.intra_inc_100;
  v[kAudioInterInc50] = d.audio.inter_inc_50;
  v[kAudioInterInc100] = d.audio.inter_inc_100;

  auto frames_under = [&](double seconds) {
    return static_cast<double>(shot.frames() * fps.den) < seconds * static_cast<double>(fps.num);
  };
  if (frames_under(params.durations.very_short_max_s))
    v[kDurVeryShort] = true;
  else if (frames_under(params.durations.short_max_s))
    v[kDurShort] = true;
  else if (frames_under(params.durations.medium_max_s))
    v[kDurMedium] = true;
  else
    v[kDurLong] = true;
  return v;
}

// One weighted term of an advanced filter that reads a neighbour shot's
// elementary outcome (offset in shots, e.g. +1 = next shot).
struct NeighborTerm {
  int offset = 0;
  int filter = 0;  // Elementary index
  double weight = 0.0;
};

// Advanced filter: a linear functional over the elementary outcomes of a
// shot and optionally its neighbours. percent is this filter's share of
// the summary duration.
struct AdvancedFilterSpec {
  std::string name;
  std::array<double, kElementaryCount> weight{};
  std::vector<NeighborTerm> neighbors;
  double percent = 0.0;

  void validate() const {
    if (name.empty()) throw config_error("advanced filter needs a name");
    bool any = false;
    for (double w : weight)
      if (w != 0.0) any = true;
    for (const NeighborTerm& t : neighbors)
      if (t.weight != 0.0) any = true;
    if (!any) throw config_error("advanced filter '" + name + "' has no nonzero weight");
    if (percent < 0.0) throw config_error("advanced filter '" + name + "' has negative percent");
  }
};

// Local score of shot `index` under one advanced filter: the weighted sum
// of its elementary outcomes plus any neighbour terms. Neighbour offsets
// that leave the shot list contribute nothing.
inline double local_score(const AdvancedFilterSpec& spec,
                          const std::vector<ElementaryVector>& shots, std::size_t index) {
  double acc = 0.0;
  const ElementaryVector& v = shots[index];
  for (int i = 0; i < kElementaryCount; ++i)
    if (v[i]) acc += spec.weight[static_cast<std::size_t>(i)];
  for (const NeighborTerm& t : spec.neighbors) {
    std::int64_t j = static_cast<std::int64_t>(index) + t.offset;
    if (j < 0 || j >= static_cast<std::int64_t>(shots.size())) continue;
    if (shots[static_cast<std::size_t>(j)][t.filter]) acc += t.weight;
  }
  return acc;
}

// Local scores per (filter, shot) and the global score per shot: the plain
// sum of its local scores, in filter declaration order.
struct ScoreTable {
  std::vector<std::vector<double>> local;  // [filter][shot]
  std::vector<double> global_score;        // [shot]
};

inline ScoreTable score_shots(const std::vector<AdvancedFilterSpec>& filters,
                              const std::vector<ElementaryVector>& shots) {
  ScoreTable t;
  t.local.resize(filters.size());
  t.global_score.assign(shots.size(), 0.0);
  for (std::size_t f = 0; f < filters.size(); ++f) {
    t.local[f].resize(shots.size());
    for (std::size_t s = 0; s < shots.size(); ++s) {
      double l = local_score(filters[f], shots, s);
      t.local[f][s] = l;
      t.global_score[s] += l;
    }
  }
  return t;
}

// Stock goal filter: very high audio power and a doubling of short-term
// power on the shot itself, people close up and replays on the two shots
// that follow.
inline AdvancedFilterSpec goal_filter_preset() {
  AdvancedFilterSpec spec;
  spec.name = "goals";
  spec.percent = 100.0;
  spec.weight[kAudioPowerVH] = 2.0;
  spec.weight[kAudioIntraInc100] = 2.0;
  spec.neighbors.push_back({+1, kPersons, 1.5});
  spec.neighbors.push_back({+2, kPersons, 1.5});
  spec.neighbors.push_back({+1, kReplay, 1.0});
  spec.neighbors.push_back({+2, kReplay, 1.0});
  return spec;
}

}  // namespace socsum
